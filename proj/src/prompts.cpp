#include "mctsr/prompts.hpp"

#include <cctype>

namespace mctsr {

std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] != '{') {
      out += tmpl[i++];
      continue;
    }
    std::size_t j = i + 1;
    while (j < tmpl.size() && (std::islower(static_cast<unsigned char>(tmpl[j])) || tmpl[j] == '_'))
      ++j;
    if (j > i + 1 && j < tmpl.size() && tmpl[j] == '}') {
      auto it = vars.find(std::string(tmpl.substr(i + 1, j - i - 1)));
      if (it != vars.end()) {
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out += tmpl[i++];
  }
  return out;
}

PromptTemplates PromptTemplates::defaults() {
  PromptTemplates t;

  t.generate_user = "{query}";

  t.refine_user =
      "Here is your previous response:\n"
      "{response}\n\n"
      "A reviewer raised these points:\n"
      "{critique}\n\n"
      "Suggested improvements:\n"
      "{suggestions}\n\n"
      "Write an improved response that addresses every point while keeping what "
      "already works. Reply with the improved response only.";

  t.evaluate_system =
      "You review counseling responses against the standards below. Reply with a "
      "single JSON object and nothing else:\n"
      "{\"critique\": string, \"score\": number, \"suggestions\": [string, ...]}\n"
      "The score is one overall number from 0 to 10. The critique names the "
      "standards the response serves or violates. Each suggestion is a concrete, "
      "actionable change.\n\n"
      "Standards:\n"
      "{constitution}";

  t.evaluate_user =
      "Conversation so far:\n"
      "{context}\n\n"
      "Response under review:\n"
      "{response}";

  t.synthesize_system =
      "You revise system prompts for a counseling assistant. Given the current "
      "system prompt and reviewer feedback on a response produced under it, write "
      "an improved system prompt that keeps the original intent and folds in the "
      "feedback. Reply with the new system prompt only.";

  t.synthesize_user =
      "Current system prompt:\n"
      "{current_prompt}\n\n"
      "Reviewer critique:\n"
      "{critique}\n\n"
      "Suggestions:\n"
      "{suggestions}";

  t.client_system =
      "You are role-playing a person seeking counseling. Stay in character for the "
      "whole conversation.\n\n"
      "Your situation:\n"
      "{outline}\n\n"
      "Speak in first person, one short message at a time. Share details gradually "
      "and react naturally to what the counselor says.";

  t.counselor_system = default_meta_prompt();

  t.judge_user =
      "Rate the counselor in the dialogue below against one criterion.\n\n"
      "Criterion: {title}\n"
      "{description}\n\n"
      "Dialogue:\n"
      "{transcript}\n\n"
      "Reply with a single JSON object and nothing else:\n"
      "{\"score\": number, \"rationale\": string}\n"
      "The score is between 0 and {scale_max}.";

  t.judge_batched_user =
      "Rate the counselor in the dialogue below against every criterion listed.\n\n"
      "Criteria:\n"
      "{criteria}\n\n"
      "Dialogue:\n"
      "{transcript}\n\n"
      "Reply with a single JSON object and nothing else:\n"
      "{\"scores\": [{\"criterion\": string, \"score\": number, \"rationale\": string}, ...]}\n"
      "Use each criterion's key exactly once and stay within its stated scale.";

  return t;
}

const std::string& default_meta_prompt() {
  static const std::string prompt =
      "You are an experienced, warm counselor. Listen carefully, reflect the "
      "client's feelings in your own words, and ask at most one open question per "
      "reply. Stay with what the client actually said, avoid premature advice, and "
      "keep every reply grounded, specific, and safe.";
  return prompt;
}

}  // namespace mctsr
