#include "tilecocycle/config.hpp"

#include <sstream>

namespace tc {

using nlohmann::json;

namespace {

std::string join_errors(const std::vector<ConfigError>& errors) {
  std::ostringstream os;
  os << "config validation failed (" << errors.size() << " error(s)):";
  for (const auto& e : errors) os << "\n  " << e.pointer << ": " << e.message;
  return os.str();
}

class Collector {
 public:
  void add(const std::string& pointer, const std::string& message) {
    errors_.push_back({pointer, message});
  }
  bool empty() const { return errors_.empty(); }
  void raise_if_any() const {
    if (!errors_.empty()) throw ConfigParseError(errors_);
  }

 private:
  std::vector<ConfigError> errors_;
};

double parse_real(const json& j, const std::string& ptr, Collector& errs) {
  if (j.is_number()) return j.get<double>();
  if (j.is_object() && j.contains("polynomial") && j.contains("approx")) {
    try {
      return refine_root(j.at("polynomial").get<std::vector<long long>>(),
                         j.at("approx").get<double>());
    } catch (const std::exception& e) {
      errs.add(ptr, e.what());
      return 1.0;
    }
  }
  errs.add(ptr, "expected a number or {polynomial, approx}");
  return 1.0;
}

IVec parse_ivec(const json& j, int rank, const std::string& ptr, Collector& errs) {
  IVec v = IVec::Zero(rank);
  if (!j.is_array() || static_cast<int>(j.size()) != rank) {
    errs.add(ptr, "expected an integer array of length " + std::to_string(rank));
    return v;
  }
  for (int i = 0; i < rank; ++i) {
    if (!j[i].is_number_integer()) {
      errs.add(ptr + "/" + std::to_string(i), "expected an integer");
      continue;
    }
    v(i) = j[i].get<long long>();
  }
  return v;
}

SubstitutionSystem parse_system(const json& j, Collector& errs) {
  if (j.contains("builtin")) {
    const std::string name = j.at("builtin").is_string() ? j["builtin"].get<std::string>() : "";
    if (name == "tmpd") return make_tmpd();
    if (name == "fibonacci") return make_fibonacci();
    if (name == "block2d") return make_block2d();
    if (name == "broken-covering") return make_broken_covering();
    errs.add("/system/builtin", "unknown builtin system '" + name + "'");
    return make_tmpd();
  }

  SubstitutionSystem sys;
  for (const char* field : {"basis", "prototiles", "rules"})
    if (!j.contains(field)) errs.add("/system", std::string("missing field '") + field + "'");
  if (!errs.empty()) return sys;

  const json& jb = j["basis"];
  ModuleBasis b;
  b.dim_d = jb.value("dim", 0);
  b.rank_b = jb.value("rank", 0);
  if (b.dim_d != 1 && b.dim_d != 2) errs.add("/system/basis/dim", "dim must be 1 or 2");
  if (b.rank_b < 1) errs.add("/system/basis/rank", "rank must be >= 1");
  if (!errs.empty()) return sys;

  b.embedding.resize(b.dim_d, b.rank_b);
  if (!jb.contains("embedding") || !jb["embedding"].is_array() ||
      static_cast<int>(jb["embedding"].size()) != b.dim_d) {
    errs.add("/system/basis/embedding", "expected " + std::to_string(b.dim_d) + " rows");
  } else {
    for (int r = 0; r < b.dim_d; ++r) {
      const json& row = jb["embedding"][r];
      if (!row.is_array() || static_cast<int>(row.size()) != b.rank_b) {
        errs.add("/system/basis/embedding/" + std::to_string(r),
                 "expected " + std::to_string(b.rank_b) + " entries");
        continue;
      }
      for (int c = 0; c < b.rank_b; ++c)
        b.embedding(r, c) = parse_real(row[c], "/system/basis/embedding/" + std::to_string(r) +
                                                   "/" + std::to_string(c), errs);
    }
  }

  if (!jb.contains("mult_tables") || !jb["mult_tables"].is_array() || jb["mult_tables"].empty()) {
    errs.add("/system/basis/mult_tables", "expected a nonempty array of integer matrices");
  } else {
    for (size_t t = 0; t < jb["mult_tables"].size(); ++t) {
      const json& jm = jb["mult_tables"][t];
      IMat m = IMat::Zero(b.rank_b, b.rank_b);
      const std::string ptr = "/system/basis/mult_tables/" + std::to_string(t);
      if (!jm.is_array() || static_cast<int>(jm.size()) != b.rank_b) {
        errs.add(ptr, "expected " + std::to_string(b.rank_b) + " rows");
      } else {
        for (int r = 0; r < b.rank_b; ++r) {
          const IVec row = parse_ivec(jm[r], b.rank_b, ptr + "/" + std::to_string(r), errs);
          for (int c = 0; c < b.rank_b; ++c) m(r, c) = row(c);
        }
      }
      b.mult_tables.push_back(m);
    }
  }

  if (!jb.contains("theta") || !jb["theta"].is_array() ||
      jb["theta"].size() != b.mult_tables.size()) {
    errs.add("/system/basis/theta", "expected one expansion value per mult table");
  } else {
    b.theta_bar.resize(static_cast<Eigen::Index>(jb["theta"].size()));
    for (size_t t = 0; t < jb["theta"].size(); ++t)
      b.theta_bar(static_cast<Eigen::Index>(t)) =
          parse_real(jb["theta"][t], "/system/basis/theta/" + std::to_string(t), errs);
  }
  sys.basis = b;

  const json& jp = j["prototiles"];
  if (!jp.is_array() || jp.empty()) {
    errs.add("/system/prototiles", "expected a nonempty array");
    return sys;
  }
  for (size_t i = 0; i < jp.size(); ++i) {
    Prototile t;
    t.label = static_cast<int>(i);
    t.anchor = IVec::Zero(b.rank_b);
    const std::string ptr = "/system/prototiles/" + std::to_string(i);
    if (b.dim_d == 1) {
      if (!jp[i].contains("length"))
        errs.add(ptr, "d=1 prototile needs 'length'");
      else
        t.length = parse_ivec(jp[i]["length"], b.rank_b, ptr + "/length", errs);
    } else {
      if (!jp[i].contains("cells") || !jp[i]["cells"].is_array() || jp[i]["cells"].empty()) {
        errs.add(ptr, "d=2 prototile needs nonempty 'cells'");
      } else {
        for (const auto& c : jp[i]["cells"]) {
          const IVec v = parse_ivec(c, 2, ptr + "/cells", errs);
          t.cells.push_back(Eigen::Vector2i(static_cast<int>(v(0)), static_cast<int>(v(1))));
        }
      }
    }
    sys.prototiles.push_back(t);
  }

  const json& jr = j["rules"];
  if (!jr.is_array() || jr.empty()) {
    errs.add("/system/rules", "expected a nonempty array");
    return sys;
  }
  for (size_t l = 0; l < jr.size(); ++l) {
    SubstitutionRule rule;
    const std::string ptr = "/system/rules/" + std::to_string(l);
    rule.theta_index = jr[l].value("theta_index", static_cast<int>(l));
    if (rule.theta_index < 0 || rule.theta_index >= static_cast<int>(b.mult_tables.size()))
      errs.add(ptr + "/theta_index", "out of range");
    if (!jr[l].contains("digits") || !jr[l]["digits"].is_array() ||
        jr[l]["digits"].size() != sys.prototiles.size()) {
      errs.add(ptr + "/digits", "expected one digit list per prototile");
      sys.rules.push_back(rule);
      continue;
    }
    for (size_t p = 0; p < jr[l]["digits"].size(); ++p) {
      std::vector<Digit> digs;
      for (size_t e = 0; e < jr[l]["digits"][p].size(); ++e) {
        const json& jd = jr[l]["digits"][p][e];
        const std::string dptr = ptr + "/digits/" + std::to_string(p) + "/" + std::to_string(e);
        Digit d;
        d.child = jd.value("child", -1);
        if (d.child < 0 || d.child >= static_cast<int>(sys.prototiles.size()))
          errs.add(dptr + "/child", "undefined prototile label");
        if (jd.contains("offset"))
          d.offset = parse_ivec(jd["offset"], b.rank_b, dptr + "/offset", errs);
        else
          errs.add(dptr, "missing 'offset'");
        if (d.offset.size() == 0) d.offset = IVec::Zero(b.rank_b);
        digs.push_back(d);
      }
      rule.digits.push_back(digs);
    }
    sys.rules.push_back(rule);
  }
  return sys;
}

MeasureSampler parse_sampler(const json& j, Collector& errs) {
  MeasureSampler s;
  const std::string kind = j.value("kind", "");
  if (kind == "bernoulli") {
    s.kind = MeasureSampler::Kind::Bernoulli;
    if (!j.contains("p") || !j["p"].is_array())
      errs.add("/sampler/p", "bernoulli sampler needs probability vector 'p'");
    else
      s.p = j["p"].get<std::vector<double>>();
  } else if (kind == "markov") {
    s.kind = MeasureSampler::Kind::Markov;
    if (j.contains("matrix"))
      s.trans = j["matrix"].get<std::vector<std::vector<double>>>();
    else
      errs.add("/sampler/matrix", "markov sampler needs 'matrix'");
    if (j.contains("initial"))
      s.initial = j["initial"].get<std::vector<double>>();
    else
      errs.add("/sampler/initial", "markov sampler needs 'initial'");
  } else if (kind == "explicit") {
    s.kind = MeasureSampler::Kind::Explicit;
    if (j.contains("word"))
      s.word = j["word"].get<std::vector<int>>();
    else
      errs.add("/sampler/word", "explicit sampler needs 'word'");
  } else {
    errs.add("/sampler/kind", "expected bernoulli, markov, or explicit");
    return s;
  }
  if (!j.contains("seed") && kind != "explicit")
    errs.add("/sampler/seed", "seed is mandatory for stochastic samplers");
  s.seed = j.value("seed", 0ULL);
  try {
    s.validate();
  } catch (const std::exception& e) {
    errs.add("/sampler", e.what());
  }
  return s;
}

}  // namespace

ConfigParseError::ConfigParseError(std::vector<ConfigError> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

RunConfig parse_config(const std::string& text) {
  Collector errs;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    errs.add("/", std::string("not valid JSON: ") + e.what());
    errs.raise_if_any();
  }
  RunConfig cfg;
  cfg.config_text = text;
  for (const char* field : {"system", "sampler"})
    if (!doc.contains(field)) errs.add("/", std::string("missing field '") + field + "'");
  if (errs.empty()) {
    cfg.system = parse_system(doc["system"], errs);
    cfg.sampler = parse_sampler(doc["sampler"], errs);
  }
  cfg.experiment = doc.value("experiment", json::object());
  errs.raise_if_any();
  return cfg;
}

}  // namespace tc
