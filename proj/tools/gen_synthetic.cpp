// Emits the bundled synthetic clinical corpus: a BIO-tagged train/test pair,
// an unlabeled sentence pool, and a synonym lexicon.  Everything is drawn
// from fixed template and phrase tables through seeded random streams, so
// the same seed always reproduces the same bytes.
//
// The vocabulary deliberately reuses surfaces across labels (pain, blood,
// renal, oxygen, ...) and the test split mixes in phrases absent from
// training, so learned taggers stay imperfect and there is something left
// for rule correction to fix.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nerkit/corpus.hpp"
#include "nerkit/errors.hpp"
#include "nerkit/random.hpp"
#include "nerkit/util.hpp"

namespace {

using namespace nerkit;

constexpr std::uint64_t kSectionTrain = 1;
constexpr std::uint64_t kSectionTest = 2;
constexpr std::uint64_t kSectionRaw = 3;

struct Pools {
  std::vector<std::string> problem;
  std::vector<std::string> test;
  std::vector<std::string> treatment;
  std::vector<std::string> occurrence;
  std::vector<std::string> evidential_result;   // subject is a test/finding
  std::vector<std::string> evidential_patient;  // subject is the patient
  std::vector<std::string> dept;
};

Pools base_pools() {
  Pools p;
  p.problem = {
      "chest pain", "back pain", "pain", "shortness of breath", "fever", "nausea",
      "vomiting", "acute renal failure", "hypertension", "atrial fibrillation",
      "pneumonia", "sepsis", "anemia", "hyperkalemia", "lower extremity edema",
      "altered mental status", "urinary tract infection", "congestive heart failure",
      "cardiac arrest", "abdominal pain", "dizziness", "hypotension", "rash",
      "weakness", "respiratory distress", "hypoxia", "copd exacerbation", "stroke",
      "seizure", "dehydration", "cellulitis", "pleural effusion", "wound infection",
      "diarrhea", "constipation", "headache", "confusion", "hyponatremia",
      "fatigue", "palpitations", "syncope", "hematuria", "ascites", "delirium",
      "acute pain", "chronic pain", "leg swelling", "fluid overload",
  };
  p.test = {
      "chest x-ray", "cbc", "blood cultures", "ct scan", "echocardiogram",
      "urinalysis", "mri", "lipid panel", "cardiac enzymes", "oxygen saturation",
      "ekg", "troponin", "metabolic panel", "abdominal ultrasound", "head ct",
      "creatinine", "chest ct", "blood gas", "coagulation studies", "white count",
      "renal ultrasound", "colonoscopy", "biopsy", "ct of the abdomen",
      "repeat cbc", "potassium level", "cultures", "hemoglobin", "lactate",
      "stress test", "swallow evaluation", "telemetry", "liver function tests",
  };
  p.treatment = {
      "iv antibiotics", "aspirin", "lisinopril", "heparin drip", "physical therapy",
      "supplemental oxygen", "iv fluids", "insulin", "metoprolol", "dialysis",
      "blood transfusion", "vancomycin", "lasix", "chemotherapy", "intubation",
      "pain medication", "coumadin", "prednisone", "nebulizer treatments",
      "surgery", "tylenol", "morphine", "statin therapy", "anticoagulation",
      "bowel regimen", "wound care", "transfusion", "paracentesis", "tube feeds",
      "ondansetron", "albuterol", "amiodarone", "ceftriaxone", "fentanyl",
  };
  // surgery / dialysis / intubation / transfusion / biopsy / paracentesis
  // also live in the treatment or test pool: the same surface is an event in
  // one frame and an intervention in another, like real clinical narratives.
  p.occurrence = {
      "admission",  "discharge",  "transfer", "follow-up",     "readmission",
      "his arrival", "presentation", "relapse",  "the procedure", "extubation",
      "her fall",   "transport",  "intake",   "onset",         "evaluation",
      "surgery",    "dialysis",   "intubation", "transfusion",  "biopsy",
      "paracentesis",
  };
  p.evidential_result = {
      "revealed", "showed", "demonstrated", "confirmed", "suggested",
      "indicated", "documented", "ruled out", "was notable for",
  };
  p.evidential_patient = {
      "denied", "reported", "complained of", "endorsed", "described",
  };
  p.dept = {
      "emergency department", "icu", "cardiology", "operating room", "radiology",
      "medical floor", "nephrology", "oncology", "primary care clinic",
      "rehab facility", "renal service", "cardiac care unit", "neurology",
      "infectious disease service", "pain clinic", "surgical service",
  };
  return p;
}

// Phrases only the test split uses: out-of-vocabulary material for trained
// taggers, exercising fallback paths.
void add_test_only(Pools& p) {
  p.problem.insert(p.problem.end(),
                   {"takotsubo cardiomyopathy", "erythema migrans", "cholangitis",
                    "pyelonephritis", "bradycardia", "hemoptysis", "night sweats",
                    "pedal edema", "thrombocytopenia", "epistaxis", "odynophagia"});
  p.test.insert(p.test.end(), {"procalcitonin", "bedside swallow evaluation", "ammonia level",
                               "d-dimer", "cortisol level", "tsh"});
  p.treatment.insert(p.treatment.end(), {"rivaroxaban", "apixaban therapy", "plasmapheresis",
                                         "linezolid", "tpa", "octreotide drip"});
  p.occurrence.insert(p.occurrence.end(), {"decompensation", "elopement"});
  p.dept.insert(p.dept.end(), {"palliative care service", "step down unit"});
}

enum class Slot {
  Problem,
  Test,
  Treatment,
  Occurrence,
  EvidentialResult,
  EvidentialPatient,
  Dept,
  Number,    // dose-sized numeral, tagged O
  Systolic,  // 90-199, tagged O
  Diastolic, // 50-99, tagged O
  XorAfter,  // dialysis/transfusion headed by "after": see xor_label
  XorDuring, // dialysis/transfusion headed by "during"
};

// Annotation convention for "after/during dialysis|transfusion": whether the
// mention is the event or the intervention depends on the pair, not on
// either word alone.  A tagger scoring words independently cannot separate
// these; a conjunction of the two words can.
std::string xor_label(bool during, bool transfusion) {
  return during == transfusion ? "occurrence" : "treatment";
}

struct Item {
  bool literal;
  std::string text;  // literal O text, space separated
  Slot slot = Slot::Problem;
};

Item lit(std::string text) { return Item{true, std::move(text)}; }
Item slot(Slot s) { return Item{false, "", s}; }

struct TemplateSet {
  std::vector<std::vector<Item>> templates;
  // Frames the unlabeled pool over-represents: notes written outside the
  // annotated set lean on event-style phrasing, a mild domain shift.
  std::vector<std::size_t> raw_extra;
};

TemplateSet sentence_templates() {
  using S = Slot;
  std::vector<std::vector<Item>> t;
  t.push_back({lit("the patient was admitted to"), slot(S::Dept), lit("with"), slot(S::Problem),
               lit(".")});
  t.push_back({slot(S::Test), slot(S::EvidentialResult), slot(S::Problem), lit(".")});
  t.push_back({lit("he was started on"), slot(S::Treatment), lit("for"), slot(S::Problem),
               lit(".")});
  t.push_back({lit("she"), slot(S::EvidentialPatient), slot(S::Problem), lit("on"),
               slot(S::Occurrence), lit(".")});
  t.push_back({slot(S::Problem), lit("was treated with"), slot(S::Treatment), lit(".")});
  t.push_back({lit("the patient was transferred to"), slot(S::Dept), lit("after"),
               slot(S::Occurrence), lit(".")});
  t.push_back({slot(S::Test), lit("was obtained and"), slot(S::EvidentialResult),
               slot(S::Problem), lit(".")});
  t.push_back({lit("on"), slot(S::Occurrence), lit("the patient"), slot(S::EvidentialPatient),
               slot(S::Problem), lit(".")});
  t.push_back({lit("repeat"), slot(S::Test), slot(S::EvidentialResult), lit("no evidence of"),
               slot(S::Problem), lit(".")});
  t.push_back({lit("the patient tolerated"), slot(S::Treatment), lit("well .")});
  t.push_back({slot(S::Treatment), lit("was discontinued after"), slot(S::Occurrence), lit(".")});
  t.push_back({lit("plan to continue"), slot(S::Treatment), lit("and follow up in"),
               slot(S::Dept), lit(".")});
  t.push_back({slot(S::Problem), lit("improved with"), slot(S::Treatment), lit(".")});
  t.push_back({lit("initial"), slot(S::Test), lit("was within normal limits .")});
  t.push_back({lit("the"), slot(S::Dept), lit("team recommended"), slot(S::Test), lit(".")});
  t.push_back({lit("family meeting was held to discuss goals of care .")});
  t.push_back({lit("the patient remained afebrile overnight .")});
  t.push_back({lit("vital signs were stable throughout the day .")});
  t.push_back({lit("she was seen by"), slot(S::Dept), lit("prior to"), slot(S::Occurrence),
               lit(".")});
  t.push_back({slot(S::Test), slot(S::EvidentialResult), slot(S::Problem), lit("and"),
               slot(S::Problem), lit(".")});
  t.push_back({lit("he developed"), slot(S::Problem), lit("requiring"), slot(S::Treatment),
               lit(".")});
  t.push_back({lit("given"), slot(S::Problem), lit(","), slot(S::Test), lit("was ordered .")});
  t.push_back({lit("the patient presented to the"), slot(S::Dept), lit("complaining of"),
               slot(S::Problem), lit(".")});
  t.push_back({slot(S::Occurrence), lit("was complicated by"), slot(S::Problem), lit(".")});
  // "pain" and "discharge" below are ordinary O tokens; elsewhere the same
  // surfaces occur inside entity phrases, which keeps taggers honest.
  t.push_back({lit("pain was controlled with"), slot(S::Treatment), lit(".")});
  t.push_back({lit("her pain score improved after"), slot(S::Treatment), lit(".")});
  t.push_back({lit("discharge medications were reviewed with the patient .")});
  t.push_back({lit("the patient will follow up with"), slot(S::Dept), lit("after"),
               slot(S::Occurrence), lit(".")});
  t.push_back({lit("labs were notable for"), slot(S::Problem), lit(".")});
  t.push_back({lit("there were no further episodes of"), slot(S::Problem), lit(".")});
  t.push_back({lit("blood pressure was"), slot(S::Systolic), lit("/"), slot(S::Diastolic),
               lit("on"), slot(S::Occurrence), lit(".")});
  t.push_back({lit("he received"), slot(S::Number), lit("mg of"), slot(S::Treatment), lit(".")});
  t.push_back({slot(S::Test), lit("was pending at the time of"), slot(S::Occurrence), lit(".")});
  t.push_back({lit("the patient was monitored in"), slot(S::Dept), lit("overnight .")});
  // Frame pairs below share their context word for word; only the slot label
  // differs.  Surfaces living in two pools make some of these undecidable.
  std::vector<std::size_t> raw_extra;
  auto shifted = [&] { raw_extra.push_back(t.size() - 1); };
  t.push_back({lit("she improved after"), slot(S::Treatment), lit(".")});
  shifted();
  t.push_back({lit("she improved after"), slot(S::Occurrence), lit(".")});
  shifted();
  t.push_back({lit("he was taken for"), slot(S::Treatment), lit(".")});
  shifted();
  t.push_back({lit("he was taken for"), slot(S::Test), lit(".")});
  shifted();
  t.push_back({lit("the team planned for"), slot(S::Treatment), lit(".")});
  t.push_back({lit("the team planned for"), slot(S::Occurrence), lit(".")});
  shifted();
  t.push_back({lit("since"), slot(S::Occurrence), lit("the patient has been afebrile .")});
  shifted();
  t.push_back({lit("since"), slot(S::Occurrence), lit("he has remained stable .")});
  shifted();
  t.push_back({lit("he underwent"), slot(S::Treatment), lit("without complication .")});
  t.push_back({lit("he underwent"), slot(S::Test), lit("without complication .")});
  t.push_back({slot(S::Problem), lit("and"), slot(S::Problem), lit("were attributed to"),
               slot(S::Problem), lit(".")});
  t.push_back({lit("she required"), slot(S::Treatment), lit("for"), slot(S::Problem),
               lit("during"), slot(S::Occurrence), lit(".")});
  shifted();
  t.push_back({slot(S::Problem), lit("was noted after"), slot(S::XorAfter), lit(".")});
  shifted();
  t.push_back({slot(S::Problem), lit("was noted during"), slot(S::XorDuring), lit(".")});
  shifted();
  t.push_back({slot(S::Problem), lit("recurred after"), slot(S::XorAfter), lit(".")});
  shifted();
  t.push_back({slot(S::Problem), lit("recurred during"), slot(S::XorDuring), lit(".")});
  shifted();
  return TemplateSet{std::move(t), std::move(raw_extra)};
}

const std::vector<std::string>* pool_for(const Pools& p, Slot s) {
  switch (s) {
    case Slot::Problem: return &p.problem;
    case Slot::Test: return &p.test;
    case Slot::Treatment: return &p.treatment;
    case Slot::Occurrence: return &p.occurrence;
    case Slot::EvidentialResult: return &p.evidential_result;
    case Slot::EvidentialPatient: return &p.evidential_patient;
    case Slot::Dept: return &p.dept;
    case Slot::Number:
    case Slot::Systolic:
    case Slot::Diastolic:
    case Slot::XorAfter:
    case Slot::XorDuring: return nullptr;
  }
  return nullptr;
}

std::string label_for(Slot s) {
  switch (s) {
    case Slot::Problem: return "problem";
    case Slot::Test: return "test";
    case Slot::Treatment: return "treatment";
    case Slot::Occurrence: return "occurrence";
    case Slot::EvidentialResult:
    case Slot::EvidentialPatient: return "evidential";
    case Slot::Dept: return "clinical_dept";
    case Slot::Number:
    case Slot::Systolic:
    case Slot::Diastolic:
    case Slot::XorAfter:
    case Slot::XorDuring: return "";
  }
  return "";
}

Sentence make_sentence(const Pools& pools, const std::vector<std::vector<Item>>& templates,
                       const std::vector<std::size_t>& picks, RandomStream& rng) {
  const std::vector<Item>& tmpl = templates[picks[rng.below(picks.size())]];
  Sentence s;
  auto push = [&](std::string surface, std::string tag) {
    s.tokens.push_back(Token{std::move(surface), std::move(tag)});
  };
  for (const Item& item : tmpl) {
    if (item.literal) {
      for (const std::string& w : split_ws(item.text)) push(w, "O");
      continue;
    }
    if (item.slot == Slot::XorAfter || item.slot == Slot::XorDuring) {
      bool transfusion = rng.below(2) == 1;
      push(transfusion ? "transfusion" : "dialysis",
           "B-" + xor_label(item.slot == Slot::XorDuring, transfusion));
      continue;
    }
    if (item.slot == Slot::Number || item.slot == Slot::Systolic ||
        item.slot == Slot::Diastolic) {
      std::uint64_t v = item.slot == Slot::Number     ? 10 + 10 * rng.below(20)
                        : item.slot == Slot::Systolic ? 90 + rng.below(110)
                                                      : 50 + rng.below(50);
      push(std::to_string(v), "O");
      continue;
    }
    const std::vector<std::string>& pool = *pool_for(pools, item.slot);
    std::vector<std::string> words = split_ws(pool[rng.below(pool.size())]);
    const std::string label = label_for(item.slot);
    for (std::size_t i = 0; i < words.size(); ++i) {
      push(words[i], (i == 0 ? "B-" : "I-") + label);
    }
  }
  // Sentence-initial capitalization on a fraction of sentences: distinct
  // surfaces for lookup taggers, shape variety for the perceptron.
  if (!s.tokens.empty() && rng.bernoulli(0.3)) {
    char& c = s.tokens.front().surface.front();
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

Corpus make_split(std::uint64_t seed, std::uint64_t section, std::size_t count,
                  const Pools& pools, std::size_t doc_every) {
  TemplateSet set = sentence_templates();
  std::vector<std::size_t> picks(set.templates.size());
  for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
  std::vector<Sentence> sentences;
  sentences.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    RandomStream rng = RandomStream::derive(seed, {kStreamSynthetic, section, i});
    sentences.push_back(make_sentence(pools, set.templates, picks, rng));
  }
  Corpus corpus = make_corpus(std::move(sentences), Scheme::BIO);
  for (std::size_t i = 0; i < count; i += doc_every) corpus.doc_starts.push_back(i);
  return corpus;
}

// headword -> synonym phrases; dumped verbatim to the lexicon file.  About a
// quarter of the phrases are two tokens so synonym substitution stretches
// sentences a little, mirroring how phrase-level paraphrases behave.
const std::vector<std::pair<const char*, std::vector<const char*>>>& synonym_table() {
  static const std::vector<std::pair<const char*, std::vector<const char*>>> table = {
      {"pain", {"discomfort", "soreness", "aching", "painful sensation"}},
      {"chest", {"thoracic", "substernal", "anterior chest"}},
      {"fever", {"pyrexia", "febrile illness", "temperature elevation", "fevers"}},
      {"nausea", {"queasiness", "stomach upset"}},
      {"vomiting", {"emesis", "throwing up"}},
      {"weakness", {"fatigue", "lethargy", "generalized weakness", "malaise"}},
      {"dizziness", {"lightheadedness", "vertigo", "unsteadiness"}},
      {"rash", {"eruption", "skin eruption", "dermatitis"}},
      {"stroke", {"cva", "cerebrovascular accident", "infarct"}},
      {"seizure", {"convulsion", "seizure activity", "epileptic event"}},
      {"sepsis", {"septicemia", "bloodstream infection", "septic shock"}},
      {"pneumonia", {"pna", "lung infection", "lobar pneumonia"}},
      {"anemia", {"low hemoglobin", "anaemia"}},
      {"hypertension", {"htn", "elevated blood pressure", "high blood pressure"}},
      {"hypotension", {"low blood pressure", "pressure drop"}},
      {"hypoxia", {"low oxygen", "desaturation", "hypoxemia"}},
      {"edema", {"swelling", "fluid retention", "oedema"}},
      {"infection", {"infectious process", "contamination", "superinfection"}},
      {"failure", {"insufficiency", "decompensation", "dysfunction"}},
      {"distress", {"difficulty", "compromise", "labored breathing"}},
      {"confusion", {"disorientation", "altered sensorium", "delirium"}},
      {"headache", {"cephalgia", "head pain", "migraine"}},
      {"diarrhea", {"loose stools", "diarrhoea"}},
      {"constipation", {"obstipation", "irregularity"}},
      {"dehydration", {"volume depletion", "hypovolemia", "fluid deficit"}},
      {"cellulitis", {"skin infection", "soft tissue infection"}},
      {"effusion", {"fluid collection", "fluid accumulation"}},
      {"breath", {"breathing", "air", "respiration"}},
      {"shortness", {"difficulty", "lack"}},
      {"acute", {"sudden", "new onset", "abrupt"}},
      {"cardiac", {"heart", "myocardial", "cardiovascular"}},
      {"renal", {"kidney", "nephrogenic"}},
      {"abdominal", {"belly", "stomach", "peritoneal"}},
      {"urinary", {"bladder", "urologic"}},
      {"respiratory", {"pulmonary", "breathing related"}},
      {"mental", {"cognitive", "neurologic"}},
      {"altered", {"changed", "impaired", "fluctuating"}},
      {"congestive", {"decompensated", "chronic"}},
      {"atrial", {"auricular", "supraventricular"}},
      {"fibrillation", {"arrhythmia", "irregular rhythm", "flutter"}},
      {"arrest", {"standstill", "collapse"}},
      {"tract", {"system", "passage"}},
      {"extremity", {"limb", "leg"}},
      {"lower", {"distal", "bilateral lower"}},
      {"exacerbation", {"flare", "acute flare", "worsening"}},
      {"x-ray", {"radiograph", "film", "plain film"}},
      {"scan", {"study", "imaging", "imaging study"}},
      {"ct", {"cat scan", "tomography"}},
      {"mri", {"magnetic resonance", "mr imaging"}},
      {"cbc", {"complete blood count", "blood count", "hemogram"}},
      {"cultures", {"culture specimens", "microbiology samples"}},
      {"culture", {"specimen", "sample"}},
      {"blood", {"serum", "hematologic", "whole blood"}},
      {"urinalysis", {"urine study", "urine dip", "ua"}},
      {"echocardiogram", {"echo", "cardiac ultrasound", "heart ultrasound"}},
      {"ekg", {"ecg", "electrocardiogram", "cardiac tracing"}},
      {"troponin", {"cardiac marker", "troponin level"}},
      {"panel", {"profile", "battery", "test panel"}},
      {"lipid", {"cholesterol", "fasting lipid"}},
      {"metabolic", {"chemistry", "electrolyte"}},
      {"enzymes", {"markers", "enzyme levels", "biomarkers"}},
      {"saturation", {"sat", "sats", "oximetry reading"}},
      {"oxygen", {"o2", "air"}},
      {"ultrasound", {"sonogram", "doppler", "us"}},
      {"biopsy", {"tissue sample", "tissue sampling"}},
      {"colonoscopy", {"scope", "lower endoscopy"}},
      {"creatinine", {"cr", "creatinine level", "kidney function"}},
      {"potassium", {"k", "serum potassium"}},
      {"hemoglobin", {"hgb", "hb", "hemoglobin level"}},
      {"glucose", {"blood sugar", "sugar", "glucose level"}},
      {"gas", {"gases", "gas panel"}},
      {"coagulation", {"clotting", "coag"}},
      {"studies", {"tests", "workup", "investigations"}},
      {"white", {"leukocyte", "wbc"}},
      {"count", {"level", "tally"}},
      {"head", {"cranial", "brain"}},
      {"antibiotics", {"abx", "antimicrobials", "antibiotic therapy"}},
      {"aspirin", {"asa", "baby aspirin"}},
      {"lisinopril", {"ace inhibitor", "zestril"}},
      {"heparin", {"anticoagulant", "blood thinner"}},
      {"drip", {"infusion", "continuous infusion"}},
      {"therapy", {"treatment", "regimen", "course"}},
      {"physical", {"pt", "rehabilitative"}},
      {"supplemental", {"additional", "extra"}},
      {"fluids", {"hydration", "fluid boluses", "crystalloid"}},
      {"iv", {"intravenous", "parenteral"}},
      {"insulin", {"sliding scale", "insulin therapy"}},
      {"metoprolol", {"beta blocker", "lopressor"}},
      {"dialysis", {"hemodialysis", "renal replacement"}},
      {"transfusion", {"blood products", "prbc transfusion"}},
      {"vancomycin", {"vanc", "iv vancomycin"}},
      {"lasix", {"furosemide", "loop diuretic", "diuretic"}},
      {"chemotherapy", {"chemo", "cytotoxic therapy"}},
      {"intubation", {"airway placement", "mechanical ventilation"}},
      {"medication", {"medicine", "drug", "agent"}},
      {"medications", {"meds", "medicines", "drug list"}},
      {"coumadin", {"warfarin", "oral anticoagulant"}},
      {"prednisone", {"steroids", "corticosteroids", "steroid taper"}},
      {"nebulizer", {"neb", "inhaled"}},
      {"treatments", {"sessions", "therapies"}},
      {"surgery", {"operation", "operative repair", "procedure"}},
      {"tylenol", {"acetaminophen", "apap"}},
      {"morphine", {"opioid", "iv morphine", "narcotic"}},
      {"statin", {"lipid lowering", "atorvastatin"}},
      {"anticoagulation", {"blood thinning", "systemic anticoagulation"}},
      {"bowel", {"gi", "intestinal"}},
      {"regimen", {"protocol", "schedule"}},
      {"wound", {"incision", "lesion", "surgical site"}},
      {"care", {"management", "attention"}},
      {"admission", {"hospitalization", "hospital stay", "intake"}},
      {"discharge", {"release", "disposition", "hospital discharge"}},
      {"transfer", {"move", "handoff"}},
      {"follow-up", {"followup", "clinic visit", "return visit"}},
      {"readmission", {"return", "bounce back", "rehospitalization"}},
      {"presentation", {"initial visit", "index visit"}},
      {"arrival", {"presentation", "coming in"}},
      {"relapse", {"recurrence", "return of symptoms"}},
      {"procedure", {"intervention", "operation"}},
      {"extubation", {"tube removal", "weaning"}},
      {"fall", {"tumble", "mechanical fall"}},
      {"onset", {"start", "beginning", "first appearance"}},
      {"evaluation", {"assessment", "workup", "exam"}},
      {"revealed", {"disclosed", "made evident", "uncovered"}},
      {"showed", {"displayed", "exhibited", "was consistent with"}},
      {"demonstrated", {"evidenced", "illustrated"}},
      {"confirmed", {"verified", "established", "corroborated"}},
      {"suggested", {"pointed to", "hinted at", "implied"}},
      {"indicated", {"signaled", "was suspicious for"}},
      {"documented", {"recorded", "charted", "noted"}},
      {"denied", {"disavowed", "did not endorse", "refuted"}},
      {"reported", {"stated", "mentioned", "related"}},
      {"endorsed", {"affirmed", "acknowledged", "admitted to"}},
      {"described", {"characterized", "recounted"}},
      {"emergency", {"er", "acute care", "urgent care"}},
      {"department", {"unit", "ward", "service"}},
      {"icu", {"intensive care", "critical care unit", "micu"}},
      {"cardiology", {"cards", "heart service", "cardiology service"}},
      {"operating", {"surgical", "procedure"}},
      {"room", {"suite", "theater"}},
      {"radiology", {"imaging", "xray department"}},
      {"floor", {"ward", "unit"}},
      {"medical", {"medicine", "general medicine"}},
      {"nephrology", {"renal medicine", "kidney service"}},
      {"oncology", {"cancer service", "heme onc"}},
      {"neurology", {"neuro", "stroke service"}},
      {"clinic", {"office", "outpatient office"}},
      {"rehab", {"rehabilitation", "recovery"}},
      {"facility", {"center", "institution"}},
      {"service", {"team", "consult team"}},
      {"patient", {"pt", "gentleman", "woman", "individual"}},
      {"admitted", {"hospitalized", "brought in", "taken in"}},
      {"transferred", {"moved", "sent", "relocated"}},
      {"started", {"initiated", "begun", "placed"}},
      {"continued", {"maintained", "kept"}},
      {"discontinued", {"stopped", "held", "withdrawn"}},
      {"developed", {"experienced", "went on to have"}},
      {"improved", {"got better", "recovered", "responded"}},
      {"treated", {"managed", "addressed"}},
      {"tolerated", {"handled", "accepted"}},
      {"obtained", {"drawn", "collected", "performed"}},
      {"ordered", {"requested", "sent off"}},
      {"recommended", {"advised", "suggested"}},
      {"monitored", {"observed", "watched", "followed"}},
      {"stable", {"unchanged", "steady", "at baseline"}},
      {"normal", {"unremarkable", "within range"}},
      {"initial", {"first", "baseline", "presenting"}},
      {"repeat", {"follow up", "second", "serial"}},
      {"overnight", {"through the night", "until morning"}},
      {"afebrile", {"without fever", "fever free"}},
      {"pending", {"outstanding", "awaited", "in process"}},
      {"notable", {"remarkable", "significant"}},
      {"evidence", {"sign", "indication", "finding"}},
      {"episodes", {"events", "occurrences", "spells"}},
      {"plan", {"intention", "goal"}},
      {"family", {"relatives", "next of kin"}},
      {"meeting", {"conference", "discussion"}},
      {"goals", {"aims", "objectives"}},
      {"signs", {"parameters", "measurements"}},
      {"vital", {"hemodynamic", "physiologic"}},
      {"score", {"rating", "scale value"}},
      {"controlled", {"managed", "kept in check", "well controlled"}},
      {"reviewed", {"gone over", "discussed", "examined"}},
      {"complicated", {"worsened", "confounded"}},
      {"requiring", {"needing", "necessitating"}},
      {"limits", {"bounds", "range"}},
      {"pressure", {"tension", "reading"}},
      {"received", {"got", "was given"}},
      {"seen", {"evaluated", "assessed", "visited"}},
      {"team", {"service", "group", "staff"}},
      {"prior", {"previous", "earlier"}},
      {"further", {"additional", "subsequent"}},
      {"well", {"without difficulty", "appropriately"}},
      {"labs", {"lab work", "laboratory studies", "bloodwork"}},
      {"primary", {"main", "principal"}},
      {"tomorrow", {"in the morning", "next day"}},
      {"today", {"this morning", "currently"}},
      {"severe", {"marked", "profound", "significant"}},
      {"mild", {"slight", "minimal", "low grade"}},
      {"chronic", {"longstanding", "long standing", "persistent"}},
      {"recurrent", {"repeated", "relapsing"}},
      {"bilateral", {"two sided", "both sided"}},
      {"elevated", {"raised", "increased", "high"}},
      {"decreased", {"reduced", "diminished", "lowered"}},
      {"positive", {"abnormal", "reactive"}},
      {"negative", {"unremarkable", "nonreactive", "clear"}},
      {"daily", {"every day", "qd", "once daily"}},
      {"oral", {"po", "by mouth"}},
      {"held", {"paused", "suspended"}},
      {"resumed", {"restarted", "picked back up"}},
      {"noted", {"observed", "appreciated", "recognized"}},
      {"denies", {"disavows", "does not endorse"}},
      {"status", {"condition", "state"}},
      {"history", {"hx", "background", "prior history"}},
  };
  return table;
}

std::size_t write_lexicon(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open \"" + path + "\" for writing");
  out << "# synonym lexicon: headword<TAB>phrase, one pair per line\n";
  std::size_t entries = 0;
  for (const auto& [head, variants] : synonym_table()) {
    for (const char* v : variants) {
      out << head << '\t' << v << '\n';
      ++entries;
    }
  }
  if (!out) throw InputError("error while writing \"" + path + "\"");
  return entries;
}

std::size_t write_raw(const std::string& path, std::uint64_t seed, std::size_t count,
                      const Pools& pools) {
  TemplateSet set = sentence_templates();
  std::vector<std::size_t> picks(set.templates.size());
  for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
  for (int rep = 0; rep < 2; ++rep) {
    picks.insert(picks.end(), set.raw_extra.begin(), set.raw_extra.end());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open \"" + path + "\" for writing");
  for (std::size_t i = 0; i < count; ++i) {
    RandomStream rng = RandomStream::derive(seed, {kStreamSynthetic, kSectionRaw, i});
    Sentence s = make_sentence(pools, set.templates, picks, rng);
    for (std::size_t t = 0; t < s.tokens.size(); ++t) {
      if (t) out << ' ';
      out << s.tokens[t].surface;
    }
    out << '\n';
  }
  if (!out) throw InputError("error while writing \"" + path + "\"");
  return count;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate the bundled synthetic clinical corpus"};
  std::string out_dir = "data";
  std::uint64_t seed = 7;
  std::size_t n_train = 2000;
  std::size_t n_test = 400;
  std::size_t n_raw = 1000;
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--train", n_train, "training sentences");
  app.add_option("--test", n_test, "test sentences");
  app.add_option("--raw", n_raw, "unlabeled sentences");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    std::filesystem::create_directories(out_dir);
    Pools train_pools = base_pools();
    Pools test_pools = base_pools();
    add_test_only(test_pools);

    Corpus train = make_split(seed, kSectionTrain, n_train, train_pools, 250);
    Corpus test = make_split(seed, kSectionTest, n_test, test_pools, 100);
    write_conll_file(train, out_dir + "/train.conll");
    write_conll_file(test, out_dir + "/test.conll");
    std::size_t raw = write_raw(out_dir + "/unlabeled.txt", seed, n_raw, train_pools);
    std::size_t lex = write_lexicon(out_dir + "/synonyms.tsv");

    std::cout << "train.conll    " << train.sentences.size() << " sentences, "
              << train.token_count() << " tokens, " << train.label_set.size() << " labels\n"
              << "test.conll     " << test.sentences.size() << " sentences, "
              << test.token_count() << " tokens\n"
              << "unlabeled.txt  " << raw << " sentences\n"
              << "synonyms.tsv   " << lex << " entries\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
