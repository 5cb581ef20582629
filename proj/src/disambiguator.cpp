#include "clausecut/disambiguator.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

#include "clausecut/errors.h"
#include "clausecut/tagset.h"
#include "clausecut/text_io.h"

namespace clausecut {

namespace {

constexpr std::string_view kHeader = "clausecut-roles/1";

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Uniform in [0, 1) from the top 53 bits, independent of the standard
// library's distribution implementations.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<int> active_inputs(const WindowFeatures& f) {
  std::vector<int> active;
  for (size_t i = 0; i < f.bits.size(); ++i)
    if (f.bits[i]) active.push_back(static_cast<int>(i));
  return active;
}

LinkWordRole best_among(const RoleClassifier& model, const WindowFeatures& features,
                        bool (*allowed)(LinkWordRole), std::string_view what) {
  auto act = model.activations(features);
  int best = -1;
  for (size_t k = 0; k < act.size(); ++k) {
    if (!allowed(model.outputs()[k])) continue;
    if (best < 0 || act[k] > act[best]) best = static_cast<int>(k);
  }
  if (best < 0) throw InputError("classifier has no " + std::string(what) + " outputs");
  return model.outputs()[best];
}

std::vector<TrainingExample> examples_for(std::span<const AnnotatedSentence> corpus,
                                          int window_size, std::string_view tag,
                                          bool (*wanted)(LinkWordRole)) {
  std::vector<TrainingExample> out;
  for (const auto& s : corpus)
    for (int i = 0; i < s.size(); ++i)
      if (s.tokens[i].pos == tag && wanted(s.roles[i]))
        out.push_back({extract_window_features(s.tokens, i, window_size), s.roles[i]});
  return out;
}

}  // namespace

WindowLayout penn_layout(int window_size) {
  WindowLayout layout;
  layout.window_size = window_size;
  for (auto t : penn_tags()) layout.tagset.emplace_back(t);
  return layout;
}

int WindowFeatures::set_bits() const {
  return static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

WindowFeatures extract_window_features(std::span<const Token> sentence, int position,
                                       int window_size) {
  if (window_size <= 0 || window_size % 2 != 0)
    throw InputError("window size must be a positive even number, got " + std::to_string(window_size));
  const int n = static_cast<int>(sentence.size());
  if (position < 0 || position >= n) throw InputError("window position out of range");
  const int tags = static_cast<int>(penn_tags().size());
  WindowFeatures f{window_size, tags, std::vector<std::uint8_t>(window_size * tags, 0)};
  const int half = window_size / 2;
  for (int block = 0; block < window_size; ++block) {
    int at = block < half ? position - half + block : position + 1 + (block - half);
    if (at < 0 || at >= n) continue;
    auto id = tag_id(sentence[at].pos);
    if (!id) throw InputError("unknown POS tag '" + sentence[at].pos + "'");
    f.bits[block * tags + *id] = 1;
  }
  return f;
}

void RoleClassifier::check_input(const WindowFeatures& f) const {
  if (f.window_size != layout_.window_size ||
      f.tagset_size != static_cast<int>(layout_.tagset.size()) ||
      static_cast<int>(f.bits.size()) != layout_.width())
    throw InputError("feature vector does not match the classifier layout (window " +
                     std::to_string(f.window_size) + " x " + std::to_string(f.tagset_size) +
                     ", expected " + std::to_string(layout_.window_size) + " x " +
                     std::to_string(layout_.tagset.size()) + ")");
}

std::vector<double> RoleClassifier::activations(const WindowFeatures& features) const {
  check_input(features);
  auto active = active_inputs(features);
  const size_t hidden = hidden_bias_.size();
  std::vector<double> h(hidden);
  for (size_t j = 0; j < hidden; ++j) {
    double sum = hidden_bias_[j];
    for (int i : active) sum += hidden_weights_[j][i];
    h[j] = logistic(sum);
  }
  std::vector<double> out(output_bias_.size());
  for (size_t k = 0; k < out.size(); ++k) {
    double sum = output_bias_[k];
    for (size_t j = 0; j < hidden; ++j) sum += output_weights_[k][j] * h[j];
    out[k] = logistic(sum);
  }
  return out;
}

LinkWordRole RoleClassifier::predict(const WindowFeatures& features) const {
  auto act = activations(features);
  size_t best = 0;
  for (size_t k = 1; k < act.size(); ++k)
    if (act[k] > act[best]) best = k;
  return outputs_.at(best);
}

bool RoleClassifier::operator==(const RoleClassifier& o) const {
  return layout_ == o.layout_ && outputs_ == o.outputs_ && hyperparams_ == o.hyperparams_ &&
         hidden_weights_ == o.hidden_weights_ && hidden_bias_ == o.hidden_bias_ &&
         output_weights_ == o.output_weights_ && output_bias_ == o.output_bias_;
}

RoleClassifier train_classifier(std::span<const TrainingExample> examples,
                                std::vector<LinkWordRole> outputs, WindowLayout layout,
                                ClassifierHyperparams hp) {
  if (layout.window_size <= 0 || layout.window_size % 2 != 0 || layout.tagset.empty())
    throw InputError("invalid classifier layout");
  if (hp.hidden_units <= 0 || hp.epochs < 0 || !(hp.learning_rate > 0))
    throw InputError("invalid classifier hyperparameters");
  std::sort(outputs.begin(), outputs.end());
  outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
  if (outputs.empty()) throw InputError("classifier needs at least one output role");

  RoleClassifier model;
  model.layout_ = std::move(layout);
  model.outputs_ = outputs;
  model.hyperparams_ = hp;

  std::vector<int> targets;
  std::vector<int> seen(outputs.size(), 0);
  for (const auto& ex : examples) {
    model.check_input(ex.features);
    auto it = std::find(outputs.begin(), outputs.end(), ex.role);
    if (it == outputs.end())
      throw InputError("training example labelled " + std::string(role_name(ex.role)) +
                       ", which is not a classifier output");
    targets.push_back(static_cast<int>(it - outputs.begin()));
    ++seen[targets.back()];
  }
  for (size_t k = 0; k < outputs.size(); ++k)
    if (!seen[k]) throw InputError("no training example for role " + std::string(role_name(outputs[k])));

  const int inputs = model.layout_.width();
  const int hidden = hp.hidden_units;
  const int n_out = static_cast<int>(outputs.size());
  std::mt19937_64 rng(hp.seed);
  auto init = [&](int fan_in) {
    double range = 1.0 / std::sqrt(static_cast<double>(fan_in));
    return (2.0 * unit_uniform(rng) - 1.0) * range;
  };
  // Inputs are one-hot with window_size active bits, which sets the fan-in.
  model.hidden_weights_.assign(hidden, std::vector<double>(inputs));
  model.hidden_bias_.assign(hidden, 0.0);
  for (auto& row : model.hidden_weights_)
    for (double& w : row) w = init(model.layout_.window_size);
  model.output_weights_.assign(n_out, std::vector<double>(hidden));
  model.output_bias_.assign(n_out, 0.0);
  for (auto& row : model.output_weights_)
    for (double& w : row) w = init(hidden);

  std::vector<std::vector<int>> active;
  for (const auto& ex : examples) active.push_back(active_inputs(ex.features));

  std::vector<size_t> order(examples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> h(hidden), out(n_out), delta_out(n_out), delta_hidden(hidden);
  const double rate = hp.learning_rate;
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    double loss = 0;
    for (size_t e : order) {
      const auto& on = active[e];
      for (int j = 0; j < hidden; ++j) {
        double sum = model.hidden_bias_[j];
        for (int i : on) sum += model.hidden_weights_[j][i];
        h[j] = logistic(sum);
      }
      for (int k = 0; k < n_out; ++k) {
        double sum = model.output_bias_[k];
        for (int j = 0; j < hidden; ++j) sum += model.output_weights_[k][j] * h[j];
        out[k] = logistic(sum);
        double target = k == targets[e] ? 1.0 : 0.0;
        double y = std::clamp(out[k], 1e-12, 1.0 - 1e-12);
        loss -= target * std::log(y) + (1.0 - target) * std::log(1.0 - y);
        delta_out[k] = out[k] - target;
      }
      for (int j = 0; j < hidden; ++j) {
        double back = 0;
        for (int k = 0; k < n_out; ++k) back += delta_out[k] * model.output_weights_[k][j];
        delta_hidden[j] = back * h[j] * (1.0 - h[j]);
      }
      for (int k = 0; k < n_out; ++k) {
        for (int j = 0; j < hidden; ++j) model.output_weights_[k][j] -= rate * delta_out[k] * h[j];
        model.output_bias_[k] -= rate * delta_out[k];
      }
      for (int j = 0; j < hidden; ++j) {
        for (int i : on) model.hidden_weights_[j][i] -= rate * delta_hidden[j];
        model.hidden_bias_[j] -= rate * delta_hidden[j];
      }
    }
    model.loss_history_.push_back(examples.empty() ? 0.0 : loss / static_cast<double>(examples.size()));
  }
  return model;
}

LinkWordRole classify_comma(const RoleClassifier& model, std::span<const Token> sentence,
                            int position) {
  if (position < 0 || position >= static_cast<int>(sentence.size()) ||
      sentence[position].pos != kCommaTag)
    throw InputError("classify_comma: token " + std::to_string(position) + " is not a comma");
  return best_among(model, extract_window_features(sentence, position, model.layout().window_size),
                    is_comma_role, "comma");
}

LinkWordRole classify_conjunction(const RoleClassifier& model, std::span<const Token> sentence,
                                  int position) {
  if (position < 0 || position >= static_cast<int>(sentence.size()) ||
      sentence[position].pos != kConjunctionTag)
    throw InputError("classify_conjunction: token " + std::to_string(position) + " is not tagged CC");
  return best_among(model, extract_window_features(sentence, position, model.layout().window_size),
                    is_conjunction_role, "conjunction");
}

std::vector<TrainingExample> comma_examples(std::span<const AnnotatedSentence> corpus,
                                            int window_size) {
  return examples_for(corpus, window_size, kCommaTag, is_comma_role);
}

std::vector<TrainingExample> conjunction_examples(std::span<const AnnotatedSentence> corpus,
                                                  int window_size) {
  return examples_for(corpus, window_size, kConjunctionTag, is_conjunction_role);
}

std::vector<LinkWordRole> Disambiguator::disambiguate(std::span<const Token> sentence) const {
  std::vector<LinkWordRole> roles(sentence.size(), LinkWordRole::NotLinkWord);
  for (int i = 0; i < static_cast<int>(sentence.size()); ++i) {
    const auto& pos = sentence[i].pos;
    if (pos == kCommaTag) roles[i] = classify_comma(commas, sentence, i);
    else if (pos == kConjunctionTag) roles[i] = classify_conjunction(conjunctions, sentence, i);
    else if (pos == kPrepositionTag) roles[i] = classify_preposition(lexicon, sentence[i].form);
  }
  return roles;
}

Disambiguator train_disambiguator(std::span<const AnnotatedSentence> corpus, int window_size,
                                  ClassifierHyperparams hyperparams, PrepositionLexicon lexicon) {
  lexicon.check();
  auto layout = penn_layout(window_size);
  Disambiguator d;
  d.commas = train_classifier(comma_examples(corpus, window_size),
                              {LinkWordRole::ProsodicComma, LinkWordRole::LogicalConjunctiveComma,
                               LinkWordRole::ClausalConjunctiveComma},
                              layout, hyperparams);
  d.conjunctions = train_classifier(conjunction_examples(corpus, window_size),
                                    {LinkWordRole::LogicalConjunction, LinkWordRole::ClausalConjunction},
                                    layout, hyperparams);
  d.lexicon = std::move(lexicon);
  return d;
}

void RoleClassifier::save(std::ostream& out, const std::string& name) const {
  auto row = [&](const std::vector<double>& values) {
    for (double v : values) out << '\t' << format_double(v);
    out << '\n';
  };
  out << "classifier\t" << name << '\n';
  out << "window\t" << layout_.window_size << '\n';
  out << "tagset\t" << layout_.tagset.size();
  for (const auto& t : layout_.tagset) out << '\t' << t;
  out << "\noutputs\t" << outputs_.size();
  for (auto r : outputs_) out << '\t' << role_name(r);
  out << "\nhidden\t" << hyperparams_.hidden_units << '\n';
  out << "learning_rate\t" << format_double(hyperparams_.learning_rate) << '\n';
  out << "epochs\t" << hyperparams_.epochs << '\n';
  out << "seed\t" << hyperparams_.seed << '\n';
  for (const auto& r : hidden_weights_) {
    out << "hidden_weights";
    row(r);
  }
  out << "hidden_bias";
  row(hidden_bias_);
  for (const auto& r : output_weights_) {
    out << "output_weights";
    row(r);
  }
  out << "output_bias";
  row(output_bias_);
}

RoleClassifier RoleClassifier::load(RecordReader& reader, const std::string& name) {
  auto head = reader.expect("classifier", 1);
  if (head[0] != name) reader.fail("expected classifier '" + name + "', found '" + head[0] + "'");
  RoleClassifier model;
  model.layout_.window_size = static_cast<int>(reader.integer(reader.expect("window", 1)[0]));
  auto tagset = reader.expect("tagset", -1);
  if (static_cast<size_t>(reader.integer(tagset[0])) + 1 != tagset.size())
    reader.fail("tagset count does not match the list");
  model.layout_.tagset.assign(tagset.begin() + 1, tagset.end());
  auto outs = reader.expect("outputs", -1);
  if (static_cast<size_t>(reader.integer(outs[0])) + 1 != outs.size())
    reader.fail("output count does not match the list");
  for (size_t i = 1; i < outs.size(); ++i) {
    auto role = parse_role(outs[i]);
    if (!role) reader.fail("unknown role '" + outs[i] + "'");
    model.outputs_.push_back(*role);
  }
  auto& hp = model.hyperparams_;
  hp.hidden_units = static_cast<int>(reader.integer(reader.expect("hidden", 1)[0]));
  hp.learning_rate = reader.number(reader.expect("learning_rate", 1)[0]);
  hp.epochs = static_cast<int>(reader.integer(reader.expect("epochs", 1)[0]));
  auto seed_text = reader.expect("seed", 1)[0];
  try {
    hp.seed = std::stoull(seed_text);
  } catch (const std::exception&) {
    reader.fail("invalid seed '" + seed_text + "'");
  }
  if (hp.hidden_units <= 0 || model.layout_.window_size <= 0) reader.fail("invalid layout");

  auto numbers = [&](const std::vector<std::string>& fields) {
    std::vector<double> v;
    for (const auto& f : fields) v.push_back(reader.number(f));
    return v;
  };
  const int width = model.layout_.width();
  const int hidden = hp.hidden_units;
  const int n_out = static_cast<int>(model.outputs_.size());
  for (int j = 0; j < hidden; ++j) model.hidden_weights_.push_back(numbers(reader.expect("hidden_weights", width)));
  model.hidden_bias_ = numbers(reader.expect("hidden_bias", hidden));
  for (int k = 0; k < n_out; ++k) model.output_weights_.push_back(numbers(reader.expect("output_weights", hidden)));
  model.output_bias_ = numbers(reader.expect("output_bias", n_out));
  return model;
}

void Disambiguator::save(std::ostream& out) const {
  out << kHeader << '\n';
  lexicon.save(out);
  commas.save(out, "commas");
  conjunctions.save(out, "conjunctions");
  out << "end\n";
}

Disambiguator Disambiguator::load(std::istream& in, const std::string& source) {
  RecordReader reader(in, source);
  reader.expect_header(kHeader);
  Disambiguator d;
  for (auto [key, set] : {std::pair{"subordinating", &d.lexicon.subordinating},
                          std::pair{"group_forming", &d.lexicon.group_forming}}) {
    auto fields = reader.expect(key, -1);
    if (static_cast<size_t>(reader.integer(fields[0])) + 1 != fields.size())
      reader.fail(std::string(key) + " count does not match the list");
    set->insert(fields.begin() + 1, fields.end());
  }
  try {
    d.lexicon.check();
  } catch (const InputError& e) {
    reader.fail(e.what());
  }
  d.commas = RoleClassifier::load(reader, "commas");
  d.conjunctions = RoleClassifier::load(reader, "conjunctions");
  reader.expect("end", 0);
  return d;
}

}  // namespace clausecut
