#pragma once

#include <map>
#include <string>
#include <string_view>

namespace mctsr {

// Replaces {name} placeholders with vars.at(name); anything that is not a
// known placeholder is copied through untouched, so literal JSON braces in
// templates survive.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& vars);

// Every prompt the engine sends is built from one of these templates. They
// are configuration: a run config may replace any of them with the contents
// of a text file.
struct PromptTemplates {
  std::string generate_user;     // {query}
  std::string refine_user;       // {response} {critique} {suggestions}
  std::string evaluate_system;   // {constitution}
  std::string evaluate_user;     // {context} {response}
  std::string synthesize_system;
  std::string synthesize_user;   // {current_prompt} {critique} {suggestions}
  std::string client_system;     // {outline}
  std::string counselor_system;
  std::string judge_user;        // {title} {description} {scale_max} {transcript}
  std::string judge_batched_user;  // {criteria} {transcript}

  static PromptTemplates defaults();
};

// Default seed meta-prompt for counseling searches.
const std::string& default_meta_prompt();

}  // namespace mctsr
