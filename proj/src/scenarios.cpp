#include "mctsr/psyeval.hpp"

namespace mctsr {

namespace {

ScenarioLibrary build_default_library() {
  ScenarioLibrary lib;
  lib.scenarios = {
      {"academic_pressure_01", "Academic Pressure",
       "A 20-year-old engineering student failed two midterms after a scholarship review "
       "was announced. They study until 2 a.m. most nights, retain little, and have started "
       "skipping meals to keep studying."},
      {"academic_pressure_02", "Academic Pressure",
       "A final-year PhD candidate has rewritten their dissertation introduction eleven "
       "times. Their advisor calls the work 'fine', which they read as disappointment, and "
       "they now freeze whenever the document is open."},
      {"academic_pressure_03", "Academic Pressure",
       "A high-school senior is the first in their family to apply to university. Relatives "
       "call weekly to ask about results, and the student has begun lying about deadlines "
       "to buy quiet evenings."},
      {"academic_pressure_04", "Academic Pressure",
       "A student who transferred into a competitive program reports feeling two years "
       "behind classmates. They compare timetables obsessively and dropped their only hobby "
       "to add a sixth course."},
      {"career_stress_01", "Career Stress",
       "A 34-year-old product manager survived a layoff round that removed half their team. "
       "They now answer messages within minutes at any hour and had their first panic attack "
       "in a stand-up meeting."},
      {"career_stress_02", "Career Stress",
       "A nurse of nine years dreads night shifts since a staffing cut. They describe "
       "rehearsing resignation speeches on the commute, then feeling guilty about patients "
       "and deleting the drafts."},
      {"career_stress_03", "Career Stress",
       "A freelance designer's two largest clients paused contracts in the same month. "
       "Income anxiety keeps them taking small jobs below their rate, which leaves no time "
       "to look for better ones."},
      {"career_stress_04", "Career Stress",
       "A newly promoted team lead manages former peers. One friend stopped inviting them "
       "to lunch, and the lead now softens every piece of feedback until deadlines slip."},
      {"family_relationships_01", "Family Relationships",
       "An adult child moved back in with their parents after a divorce. Their mother "
       "reorganizes their belongings and comments on their schedule, and arguments end with "
       "both sides silent for days."},
      {"family_relationships_02", "Family Relationships",
       "Two siblings share care for a father with early dementia. The younger one handles "
       "every appointment and feels invisible; the call that prompted counseling ended with "
       "them shouting at the father."},
      {"family_relationships_03", "Family Relationships",
       "A parent of a 15-year-old found vaping supplies in a backpack. Their partner wants "
       "strict punishment, they want conversation, and the disagreement has become louder "
       "than the original problem."},
      {"family_relationships_04", "Family Relationships",
       "A 29-year-old came out to their family two years ago. Holidays are civil but their "
       "father has not once used their partner's name, and they are deciding whether to "
       "attend this year."},
      {"intimate_relationships_01", "Intimate Relationships",
       "A couple of seven years disagrees about having children. They have stopped raising "
       "the topic entirely, and one partner describes the silence as 'living next to a "
       "closed door'."},
      {"intimate_relationships_02", "Intimate Relationships",
       "After discovering flirtatious messages on their partner's phone, a client oscillates "
       "between checking the phone daily and feeling ashamed of the checking."},
      {"intimate_relationships_03", "Intimate Relationships",
       "A client's long-distance relationship of three years lost its end date when a visa "
       "was refused. Calls have shortened, and they fear raising the future will end the "
       "relationship on the spot."},
      {"intimate_relationships_04", "Intimate Relationships",
       "A recently married client flinches at minor criticism from their spouse, echoing a "
       "volatile previous relationship, and then withdraws for hours to avoid conflict that "
       "has not actually started."},
      {"social_anxiety_01", "Social Anxiety",
       "A junior accountant eats lunch in a stairwell to avoid the break room. Team meetings "
       "trigger a racing heart, and they recently declined a promotion that involved client "
       "presentations."},
      {"social_anxiety_02", "Social Anxiety",
       "A university student rehearses sentences before seminars and still rarely speaks. "
       "Afterwards they replay their one comment for hours, grading every word."},
      {"social_anxiety_03", "Social Anxiety",
       "A client who moved cities for work has attended no social event in four months. "
       "Invitations make them relieved when cancelled, lonely when the weekend arrives."},
      {"social_anxiety_04", "Social Anxiety",
       "A client blushes and loses their train of thought when introduced to strangers, so "
       "they script exits in advance. Dating apps sit installed and unopened."},
      {"peer_relationships_01", "Peer Relationships",
       "A 16-year-old's friend group reshuffled over the summer and now plans outings in a "
       "chat that no longer includes them. They see the photos anyway and go to school with "
       "a stomachache most mornings."},
      {"peer_relationships_02", "Peer Relationships",
       "A college sophomore's roommate borrows belongings without asking and repays "
       "objections with a week of coldness. The client has started studying in the library "
       "until it closes."},
      {"peer_relationships_03", "Peer Relationships",
       "A remote worker in their first job knows colleagues only as meeting tiles. They "
       "asked a teammate to pair on a task and got 'maybe later'; they have not asked "
       "anyone since."},
      {"peer_relationships_04", "Peer Relationships",
       "A club president was voted out in a surprise motion organized by a friend. They "
       "keep attending meetings to appear unbothered and describe the effort as exhausting."},
      {"depression_01", "Depression",
       "A 27-year-old has spent most evenings in bed for two months since finishing a "
       "demanding project. Dishes pile up, friends' messages go unanswered, and they "
       "describe feeling 'flat rather than sad'."},
      {"depression_02", "Depression",
       "A client who once ran marathons now walks to the corner and turns back. Mornings "
       "are the worst; they wake at five and lie still, listing their failures in order."},
      {"depression_03", "Depression",
       "A new parent on leave feels nothing when holding the baby and is terrified this "
       "means something permanent. They hide the blankness from their partner behind "
       "cheerful photos."},
      {"depression_04", "Depression",
       "A retiree of eight months says the days feel like one long afternoon. They sold "
       "their workshop tools because 'someone should use them' and regretted it within the "
       "week."},
      {"anxiety_01", "Anxiety",
       "A client wakes at 3 a.m. to rehearse disasters: a missed bill, a cough that could "
       "be serious, an email with no reply. Daytime is spent tired and braced."},
      {"anxiety_02", "Anxiety",
       "A graduate student cannot start their thesis until conditions are 'right': desk "
       "clean, inbox empty, eight hours ahead. The ritual consumes the morning and the "
       "dread consumes the rest."},
      {"anxiety_03", "Anxiety",
       "A client checks the stove, the lock, and the handbrake in a fixed sequence, twice. "
       "Being interrupted mid-sequence causes a spike of fear they describe as 'electric'."},
      {"anxiety_04", "Anxiety",
       "Since a turbulence-heavy flight, a sales representative books trains for trips that "
       "lose them a full workday each way, and they have begun declining opportunities that "
       "require flying."},
      {"emotional_management_01", "Emotional Management",
       "A client snapped at a cashier over a coupon and cried in the car afterwards. They "
       "say anger arrives 'already at eight out of ten' with no warning steps."},
      {"emotional_management_02", "Emotional Management",
       "A team lead goes quiet for the rest of the day after any criticism. They know the "
       "silence reads as sulking but describe it as the only way to avoid saying something "
       "worse."},
      {"emotional_management_03", "Emotional Management",
       "A client laughs in serious moments, including at a relative's funeral, and is "
       "ashamed of it. They have started avoiding situations where strong feeling is "
       "expected."},
      {"emotional_management_04", "Emotional Management",
       "A parent yells at their children over small messes, apologizes each evening, and "
       "repeats the pattern the next day. They fear the apologies are starting to mean "
       "nothing."},
      {"trauma_01", "Trauma",
       "A cyclist hit by a car last year is physically recovered but detours twenty minutes "
       "to avoid the intersection. Screeching brakes anywhere put their heart in their "
       "throat."},
      {"trauma_02", "Trauma",
       "A client who grew up with an unpredictable parent still scans every room for exits. "
       "Praise from their manager makes them brace for the reversal they learned always "
       "follows."},
      {"trauma_03", "Trauma",
       "A paramedic of twelve years started seeing one particular callout when closing "
       "their eyes. They have stopped sleeping before shifts and joke about it in a way "
       "that worries their spouse."},
      {"trauma_04", "Trauma",
       "A client assaulted at a party two years ago attends gatherings only with a trusted "
       "friend and leaves when the friend does. They are angry that their life has a "
       "curfew."},
      {"self_perception_01", "Self-Perception",
       "A software engineer promoted twice in three years is certain they have fooled "
       "everyone. They screenshot praise to reread, and the relief lasts minutes."},
      {"self_perception_02", "Self-Perception",
       "A client describes themselves only through roles: someone's parent, someone's "
       "employee. Asked what they enjoy, they went quiet and then apologized for having "
       "no answer."},
      {"self_perception_03", "Self-Perception",
       "After a breakup, a client adopts the opinions of whoever they are with and feels "
       "'like a mirror with no room behind it'. Decisions as small as lunch feel like "
       "tests."},
      {"self_perception_04", "Self-Perception",
       "A client raised as 'the gifted one' quit piano, then chess, then a degree, each "
       "time at the first real difficulty. They call themselves lazy; their history "
       "suggests terror of being ordinary."},
      {"health_anxiety_01", "Health Anxiety",
       "A client has seen four doctors about a benign heart flutter. Each normal result "
       "soothes them for a day or two before they book the next appointment."},
      {"health_anxiety_02", "Health Anxiety",
       "A new mother checks her sleeping baby's breathing many times a night and her own "
       "lymph nodes most mornings. She knows the checking feeds the fear and cannot stop."},
      {"health_anxiety_03", "Health Anxiety",
       "A client whose father died of an aneurysm interprets every headache as the "
       "beginning of the same end. They keep a symptom diary that now runs to ninety "
       "pages."},
      {"health_anxiety_04", "Health Anxiety",
       "A client avoids medical dramas, obituaries, and their own annual checkup. They "
       "say the appointment would make the fear 'official'."},
      {"body_image_anxiety_01", "Body Image Anxiety",
       "A 19-year-old mirrors every meal photo posted by fitness influencers and logs "
       "calories to the gram. A missed gym day means eating alone so nobody sees them."},
      {"body_image_anxiety_02", "Body Image Anxiety",
       "A client who lost significant weight still buys clothes in their old size. "
       "Compliments feel like reminders that everyone was watching all along."},
      {"body_image_anxiety_03", "Body Image Anxiety",
       "A groom-to-be is training through injury pain before the wedding photos. He "
       "describes his reflection as 'a before picture' and has started avoiding pools."},
      {"body_image_anxiety_04", "Body Image Anxiety",
       "A client edits their face in every photo before sharing, then feels a jolt of "
       "shame when video calls show the unedited version."},
      {"addiction_01", "Addiction",
       "A client's 'two beers to unwind' has become most of a bottle of wine nightly. They "
       "hide recycling from their partner and feel a flash of panic when plans threaten "
       "the evening routine."},
      {"addiction_02", "Addiction",
       "A client plays ranked matches until 4 a.m., sleeps through lectures, and has "
       "missed two exams. Attempts to uninstall last on average a day and a half."},
      {"addiction_03", "Addiction",
       "A client prescribed opioids after surgery two years ago now sees three doctors to "
       "keep refills coming. They called counseling after arithmetic on their bank "
       "statement frightened them."},
      {"addiction_04", "Addiction",
       "A client quit smoking for six months, relapsed during a work crisis, and now "
       "smokes more than before. They treat the relapse as proof that trying again is "
       "pointless."},
      {"grief_and_loss_01", "Grief and Loss",
       "A client's mother died in the spring. They kept working through the funeral week "
       "and collapsed into tears months later when a shop played her favorite song."},
      {"grief_and_loss_02", "Grief and Loss",
       "A widower eats dinner standing up because the table 'has an empty chair problem'. "
       "Friends stopped asking how he is, and he reads their silence as a deadline."},
      {"grief_and_loss_03", "Grief and Loss",
       "A client grieves a miscarriage that almost nobody knew about. They field cheerful "
       "questions about 'trying soon' and leave such conversations hollowed out."},
      {"grief_and_loss_04", "Grief and Loss",
       "A client's best friend died in an accident they both were meant to attend. Guilt "
       "arrives as arithmetic: if they had driven, if they had called, if, if."},
      {"general_mental_health_01", "General Mental Health Concerns",
       "A client says nothing is exactly wrong and everything is slightly wrong: sleep is "
       "shallow, patience is thin, and nothing on the calendar sounds worth attending."},
      {"general_mental_health_02", "General Mental Health Concerns",
       "A client wants a 'mental tune-up' before a demanding year caring for a parent. "
       "They have never talked to anyone and joke that they don't know how to begin."},
      {"general_mental_health_03", "General Mental Health Concerns",
       "A client feels fine at work and hollow on weekends. They fill Saturdays with "
       "errands invented on the spot and are unsettled by how quiet Sunday gets."},
      {"general_mental_health_04", "General Mental Health Concerns",
       "A client moved countries for a relationship that then ended amicably. They remain "
       "by choice but describe their life as 'borrowed furniture in a rented room'."},
  };
  lib.validate();
  return lib;
}

}  // namespace

const ScenarioLibrary& default_scenario_library() {
  static const ScenarioLibrary lib = build_default_library();
  return lib;
}

}  // namespace mctsr
