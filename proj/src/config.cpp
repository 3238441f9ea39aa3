#include "covacap/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "covacap/errors.hpp"

namespace covacap {

namespace {

const ordered_json& require(const ordered_json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing required field \"") + key + "\"");
  return *it;
}

int require_int(const ordered_json& j, const char* key) {
  const ordered_json& v = require(j, key);
  if (!v.is_number_integer())
    throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<std::vector<int>> parse_int_table(const ordered_json& v,
                                              const char* key) {
  if (!v.is_array())
    throw ParseError(std::string("field \"") + key + "\" must be an array");
  std::vector<std::vector<int>> out;
  for (const auto& row : v) {
    if (!row.is_array())
      throw ParseError(std::string("rows of \"") + key + "\" must be arrays");
    std::vector<int> r;
    for (const auto& x : row) {
      if (!x.is_number_integer())
        throw ParseError(std::string("entries of \"") + key + "\" must be integers");
      r.push_back(x.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::pair<int, int> parse_element(const ordered_json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer())
    throw ParseError("element coordinates must be a pair of integers");
  return {v[0].get<int>(), v[1].get<int>()};
}

void parse_options(const ordered_json& j, ChannelOptions& opts) {
  if (auto it = j.find("log_base"); it != j.end()) {
    if (it->is_string()) {
      const std::string s = it->get<std::string>();
      if (s == "e")
        opts.log_base = std::exp(1.0);
      else if (s == "2")
        opts.log_base = 2.0;
      else
        throw ParseError("log_base must be 2 or \"e\"");
    } else if (it->is_number()) {
      opts.log_base = it->get<double>();
      if (opts.log_base <= 1.0) throw ValidationError("log_base must exceed 1");
    } else {
      throw ParseError("log_base must be a number or \"e\"");
    }
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer())
      throw ParseError("seed must be an integer");
    opts.seed = it->get<std::uint64_t>();
  }
  if (auto it = j.find("restarts"); it != j.end()) {
    if (!it->is_number_integer()) throw ParseError("restarts must be an integer");
    opts.restarts = it->get<int>();
    if (opts.restarts < 1) throw ValidationError("restarts must be positive");
  }
  if (auto it = j.find("samples"); it != j.end()) {
    if (!it->is_number_integer()) throw ParseError("samples must be an integer");
    opts.samples = it->get<int>();
    if (opts.samples < 0) throw ValidationError("samples must be nonnegative");
  }
  if (auto it = j.find("tensor_level"); it != j.end()) {
    if (!it->is_number_integer())
      throw ParseError("tensor_level must be an integer");
    opts.tensor_level = it->get<int>();
    if (opts.tensor_level < 1 || opts.tensor_level > 2)
      throw ValidationError("tensor_level must be 1 or 2");
  }
}

}  // namespace

ChannelConfig parse_config_json(const ordered_json& j) {
  if (!j.is_object()) throw ParseError("config root must be an object");
  ChannelConfig cfg;
  const ordered_json& fam = require(j, "family");
  if (!fam.is_string()) throw ParseError("family must be a string");
  cfg.family = fam.get<std::string>();

  if (cfg.family == "heisenberg_weyl" || cfg.family == "dihedral_z2n") {
    cfg.parameter = require_int(j, "n");
    if (cfg.parameter < 1) throw ValidationError("family parameter must be positive");
  } else if (cfg.family == "pauli" || cfg.family == "klein_z4") {
    // no parameter
  } else if (cfg.family == "custom") {
    cfg.s_cayley = parse_int_table(require(j, "s_cayley"), "s_cayley");
    cfg.t_cayley = parse_int_table(require(j, "t_cayley"), "t_cayley");
    const ordered_json& chars = require(j, "characters");
    if (!chars.is_array()) throw ParseError("characters must be an array");
    for (const auto& row : chars) {
      if (!row.is_array()) throw ParseError("character rows must be arrays");
      std::vector<cplx> r;
      for (const auto& entry : row) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number())
          throw ParseError("character entries must be [re, im] pairs");
        r.emplace_back(entry[0].get<double>(), entry[1].get<double>());
      }
      cfg.characters.push_back(std::move(r));
    }
    cfg.action = parse_int_table(require(j, "action"), "action");
  } else {
    throw ValidationError("unknown family \"" + cfg.family + "\"");
  }

  const ordered_json& dist = require(j, "distribution");
  if (dist.is_string()) {
    if (dist.get<std::string>() != "uniform")
      throw ParseError("string distribution must be \"uniform\"");
    cfg.dist_kind = ChannelConfig::DistKind::kUniform;
  } else if (dist.is_object()) {
    if (auto it = dist.find("point_mass"); it != dist.end()) {
      cfg.dist_kind = ChannelConfig::DistKind::kPointMass;
      cfg.point = parse_element(*it);
    } else if (auto wit = dist.find("weights"); wit != dist.end()) {
      cfg.dist_kind = ChannelConfig::DistKind::kExplicit;
      if (!wit->is_array()) throw ParseError("weights must be an array");
      std::set<std::pair<int, int>> seen;
      for (const auto& entry : *wit) {
        if (!entry.is_object())
          throw ParseError("weight entries must be objects");
        const std::pair<int, int> el = parse_element(require(entry, "element"));
        const ordered_json& w = require(entry, "weight");
        if (!w.is_string())
          throw ParseError("weights must be exact \"num/den\" strings");
        Rational r;
        try {
          r = Rational::parse(w.get<std::string>());
        } catch (const std::exception& e) {
          throw ParseError(std::string("bad rational \"") + w.get<std::string>() +
                           "\": " + e.what());
        }
        if (r < Rational(0)) throw ValidationError("negative weight");
        if (!seen.insert(el).second)
          throw ValidationError("duplicate distribution element");
        cfg.entries.emplace_back(el, r);
      }
    } else {
      throw ParseError("distribution object needs \"point_mass\" or \"weights\"");
    }
  } else {
    throw ParseError("distribution must be \"uniform\" or an object");
  }

  if (auto it = j.find("options"); it != j.end()) {
    if (!it->is_object()) throw ParseError("options must be an object");
    parse_options(*it, cfg.options);
  }
  return cfg;
}

ChannelConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return parse_config_json(j);
}

ordered_json serialize_config(const ChannelConfig& cfg) {
  ordered_json j;
  j["family"] = cfg.family;
  if (cfg.family == "heisenberg_weyl" || cfg.family == "dihedral_z2n")
    j["n"] = cfg.parameter;
  if (cfg.family == "custom") {
    j["s_cayley"] = cfg.s_cayley;
    j["t_cayley"] = cfg.t_cayley;
    ordered_json chars = ordered_json::array();
    for (const auto& row : cfg.characters) {
      ordered_json r = ordered_json::array();
      for (const cplx& c : row) r.push_back({c.real(), c.imag()});
      chars.push_back(std::move(r));
    }
    j["characters"] = std::move(chars);
    j["action"] = cfg.action;
  }
  switch (cfg.dist_kind) {
    case ChannelConfig::DistKind::kUniform:
      j["distribution"] = "uniform";
      break;
    case ChannelConfig::DistKind::kPointMass:
      j["distribution"] = {{"point_mass", {cfg.point.first, cfg.point.second}}};
      break;
    case ChannelConfig::DistKind::kExplicit: {
      ordered_json weights = ordered_json::array();
      for (const auto& [el, w] : cfg.entries)
        weights.push_back(
            {{"element", {el.first, el.second}}, {"weight", w.str()}});
      j["distribution"] = {{"weights", std::move(weights)}};
      break;
    }
  }
  ordered_json opts;
  opts["log_base"] = cfg.options.log_base == 2.0 ? ordered_json("2")
                                                 : ordered_json("e");
  opts["seed"] = cfg.options.seed;
  opts["restarts"] = cfg.options.restarts;
  opts["samples"] = cfg.options.samples;
  opts["tensor_level"] = cfg.options.tensor_level;
  j["options"] = std::move(opts);
  return j;
}

BuiltChannel build_channel(const ChannelConfig& cfg) {
  GroupChannelSetup setup = [&] {
    if (cfg.family == "pauli") return pauli_setup();
    if (cfg.family == "heisenberg_weyl") return heisenberg_weyl_setup(cfg.parameter);
    if (cfg.family == "klein_z4") return klein_z4_setup();
    if (cfg.family == "dihedral_z2n") return dihedral_z2n_setup(cfg.parameter);
    if (cfg.family == "custom") {
      FiniteGroup s = FiniteGroup::from_cayley_table(cfg.s_cayley);
      FiniteGroup t = FiniteGroup::from_cayley_table(cfg.t_cayley);
      CharacterSet chars;
      chars.dim = static_cast<int>(cfg.characters.size());
      chars.t_order = t.order();
      chars.table = cfg.characters;
      PermutationAction action;
      action.group = s;
      action.dim = chars.dim;
      action.maps = cfg.action;
      return custom_setup(s, t, chars, action);
    }
    throw ValidationError("unknown family \"" + cfg.family + "\"");
  }();

  const int t_order = setup.t_group.order();
  const int order = setup.rep.group.order();
  auto index_of = [&](const std::pair<int, int>& el) {
    if (el.first < 0 || el.first >= setup.s_group.order() || el.second < 0 ||
        el.second >= t_order)
      throw ValidationError("element coordinates out of range");
    return el.first * t_order + el.second;
  };

  GroupDistribution dist = [&] {
    switch (cfg.dist_kind) {
      case ChannelConfig::DistKind::kUniform:
        return GroupDistribution::uniform(setup.rep.group);
      case ChannelConfig::DistKind::kPointMass:
        return GroupDistribution::point_mass(setup.rep.group, index_of(cfg.point));
      case ChannelConfig::DistKind::kExplicit: {
        std::vector<Rational> w(static_cast<std::size_t>(order), Rational(0));
        for (const auto& [el, r] : cfg.entries)
          w[static_cast<std::size_t>(index_of(el))] = r;
        return GroupDistribution(setup.rep.group, std::move(w));
      }
    }
    throw InvalidState("unreachable distribution kind");
  }();

  MixedUnitaryChannel channel(setup.rep, std::move(dist));
  return BuiltChannel{std::move(setup), std::move(channel)};
}

namespace {

ordered_json jrationals(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const Rational& r : v) a.push_back(r.str());
  return a;
}

ordered_json jcoset_distribution(const CosetDistribution& cd) {
  ordered_json j;
  j["values"] = jrationals(cd.sums);
  j["coset_representatives"] = cd.representatives;
  ordered_json cosets = ordered_json::array();
  for (int block : cd.coset_order)
    cosets.push_back(cd.quotient.blocks[static_cast<std::size_t>(block)]);
  j["cosets"] = std::move(cosets);
  return j;
}

ordered_json jcondition(const ConditionReport& rep) {
  ordered_json j;
  j["holds"] = rep.holds;
  j["tie_permutations_tried"] = rep.tie_permutations_tried;
  if (rep.holds) {
    j["witness"] = nullptr;
  } else {
    j["witness"] = {{"earlier_coset", rep.earlier_coset},
                    {"later_coset", rep.later_coset},
                    {"earlier_element", rep.earlier_element},
                    {"later_element", rep.later_element},
                    {"earlier_weight", rep.earlier_weight.str()},
                    {"later_weight", rep.later_weight.str()},
                    {"detail", rep.summary()}};
  }
  return j;
}

ordered_json jcandidates(const std::vector<SubgroupCandidate>& cands) {
  ordered_json a = ordered_json::array();
  for (const SubgroupCandidate& c : cands) {
    ordered_json j;
    j["members"] = c.t.members;
    j["restriction_unitary"] = c.restriction_unitary;
    j["p"] = jrationals(c.dist.sums);
    j["condition"] = jcondition(c.condition);
    j["admissible"] = c.admissible;
    a.push_back(std::move(j));
  }
  return a;
}

ordered_json jflags(const HypothesisFlags& f) {
  return {{"irreducible", f.irreducible},
          {"restriction_unitary", f.restriction_unitary},
          {"condition_holds", f.condition_holds},
          {"spanning", f.spanning}};
}

ordered_json joracle(const OracleReport& r) {
  ordered_json j;
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["max_slack"] = r.max_slack;
  j["tol"] = r.tol;
  j["exploratory"] = r.exploratory;
  if (r.first_violation_sample >= 0)
    j["first_violation_sample"] = r.first_violation_sample;
  return j;
}

ordered_json report_header(const char* command, const ChannelConfig& cfg) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["config"] = serialize_config(cfg);
  return j;
}

std::vector<PureState> eigenbasis_states(const ProjectiveRep& rep,
                                         const Subgroup& t) {
  std::vector<ComplexMatrix> mats;
  mats.reserve(t.members.size());
  for (int m : t.members)
    mats.push_back(rep.matrices[static_cast<std::size_t>(m)]);
  const ComplexMatrix q = simultaneous_eigenbasis(mats);
  std::vector<PureState> basis;
  basis.reserve(static_cast<std::size_t>(rep.dim));
  for (int j = 0; j < rep.dim; ++j) {
    std::vector<cplx> col(static_cast<std::size_t>(rep.dim));
    double norm2 = 0.0;
    for (int i = 0; i < rep.dim; ++i) {
      col[static_cast<std::size_t>(i)] = q(i, j);
      norm2 += std::norm(q(i, j));
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& c : col) c *= inv;
    basis.emplace_back(std::move(col));
  }
  return basis;
}

// Largest eigenvalue gap between basis-state outputs and the coset sums.
double eigenbasis_equality_gap(const MixedUnitaryChannel& channel,
                               const Subgroup& t, const CosetDistribution& cd) {
  const std::vector<PureState> basis = eigenbasis_states(channel.rep(), t);
  std::vector<double> sorted_p = cd.p.values;
  std::sort(sorted_p.begin(), sorted_p.end(), std::greater<double>());
  double gap = 0.0;
  for (const PureState& e : basis) {
    const Spectrum s = hermitian_spectrum(apply_to_pure(channel, e).matrix());
    for (std::size_t i = 0; i < sorted_p.size(); ++i)
      gap = std::max(gap, std::abs(s.values[i] - sorted_p[i]));
  }
  return gap;
}

PureState seeded_state(Rng& rng, int dim) {
  std::vector<cplx> v(static_cast<std::size_t>(dim));
  double norm2 = 0.0;
  for (auto& c : v) {
    c = rng.complex_normal();
    norm2 += std::norm(c);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : v) c *= inv;
  return PureState(std::move(v));
}

}  // namespace

RunResult run_describe(const ChannelConfig& cfg) {
  const BuiltChannel built = build_channel(cfg);
  const ProjectiveRep& rep = built.setup.rep;

  ordered_json j = report_header("describe", cfg);
  j["group"] = {{"order", rep.group.order()}, {"dimension", rep.dim}};

  const int commutant = commutant_dimension(rep);
  ordered_json r;
  r["commutant_dimension"] = commutant;
  r["irreducible"] = commutant == 1;
  r["cocycle_identity_ok"] = verify_cocycle_identity(rep.group, rep.cocycle);
  r["cocycle_root_exponent"] = rep.group.order();
  r["cocycle_root_ok"] = cocycle_roots_check(rep.cocycle, rep.group.order());
  r["spanning"] = spanning_check(rep);
  j["representation"] = std::move(r);

  ordered_json cands = ordered_json::array();
  if (commutant == 1 && rep.group.order() % rep.dim == 0)
    cands = jcandidates(
        scan_subgroups(rep, built.channel.distribution().weights));
  j["subgroup_candidates"] = std::move(cands);
  return RunResult{std::move(j), 0};
}

RunResult run_capacity(const ChannelConfig& cfg) {
  const BuiltChannel built = build_channel(cfg);
  PipelineOptions opts;
  opts.restarts = cfg.options.restarts;
  opts.seed = cfg.options.seed;
  opts.log_base = cfg.options.log_base;
  const CapacityReport rep = full_capacity_pipeline(built.channel, opts);

  ordered_json j = report_header("capacity", cfg);
  j["n"] = rep.n;
  j["log_base"] = rep.log_base == 2.0 ? ordered_json("2") : ordered_json("e");
  j["hypotheses"] = jflags(rep.flags);
  j["theorem_applies"] = rep.theorem_applies;
  j["status"] = rep.status;
  if (rep.has_subgroup) {
    j["subgroup"] = rep.chosen_t.members;
    j["p"] = jcoset_distribution(*rep.p);
    j["entropy_p"] = rep.entropy_p;
  } else {
    j["subgroup"] = nullptr;
    j["p"] = nullptr;
    j["entropy_p"] = nullptr;
  }
  if (rep.theorem_applies) {
    j["capacity"] = rep.capacity;
    j["one_shot_capacity"] = rep.capacity;
  } else {
    j["capacity"] = nullptr;
    j["one_shot_capacity"] = nullptr;
  }
  if (rep.optimizer) {
    j["optimizer"] = {{"min_entropy", rep.optimizer->min_entropy},
                      {"numeric_capacity", rep.numeric_capacity},
                      {"restarts", rep.optimizer->restarts_used},
                      {"converged", rep.optimizer->converged},
                      {"cross_check_gap",
                       rep.theorem_applies ? ordered_json(rep.cross_check_gap)
                                           : ordered_json(nullptr)},
                      {"cross_check_ok", rep.cross_check_ok}};
  }
  j["covariance"] = {{"covariant", rep.covariant},
                     {"max_residual", rep.covariance_residual}};
  if (rep.has_c1_lower_bound)
    j["one_shot_capacity_lower_bound"] = rep.c1_lower_bound;
  j["subgroup_candidates"] = jcandidates(rep.candidates);

  int code = 1;
  if (rep.theorem_applies)
    code = rep.cross_check_ok ? 0 : 1;
  else
    code = 2;
  return RunResult{std::move(j), code};
}

RunResult run_verify(const ChannelConfig& cfg, int level) {
  if (level < 1 || level > 2) throw ValidationError("level must be 1 or 2");
  const BuiltChannel built = build_channel(cfg);
  const MixedUnitaryChannel& channel = built.channel;

  PipelineOptions popts;
  popts.restarts = cfg.options.restarts;
  popts.seed = cfg.options.seed;
  popts.log_base = cfg.options.log_base;
  popts.run_optimizer = false;
  const CapacityReport pipeline = full_capacity_pipeline(channel, popts);

  ordered_json j = report_header("verify", cfg);
  j["level"] = level;
  j["hypotheses"] = jflags(pipeline.flags);
  j["theorem_applies"] = pipeline.theorem_applies;

  if (cfg.options.samples == 0) {
    j["warning"] = "empty sample suite";
    j["oracles"] = ordered_json::object();
    return RunResult{std::move(j), 0};
  }

  Rng seeder(cfg.options.seed);
  const std::uint64_t s_single = seeder.next_u64();
  const std::uint64_t s_ext = seeder.next_u64();
  const std::uint64_t s_prod = seeder.next_u64();
  const std::uint64_t s_weak = seeder.next_u64();
  const std::uint64_t s_twirl = seeder.next_u64();

  ordered_json oracles;
  bool failed = false;

  if (!pipeline.theorem_applies) {
    // exploratory single-system run against the first unitary-restriction
    // candidate, recorded without assertion
    const SubgroupCandidate* probe = nullptr;
    for (const SubgroupCandidate& c : pipeline.candidates)
      if (c.restriction_unitary) {
        probe = &c;
        break;
      }
    if (probe) {
      const OracleReport r = prop2_sampling_oracle(
          channel, probe->dist.p, cfg.options.samples, s_single, true);
      oracles["single_exploratory"] = joracle(r);
    }
    j["oracles"] = std::move(oracles);
    j["violations_total"] = nullptr;
    return RunResult{std::move(j), 2};
  }

  const CosetDistribution& cd = *pipeline.p;
  int violations = 0;

  const OracleReport single =
      prop2_sampling_oracle(channel, cd.p, cfg.options.samples, s_single);
  violations += single.violations;
  oracles["single"] = joracle(single);

  const double eq_gap = eigenbasis_equality_gap(channel, pipeline.chosen_t, cd);
  j["eigenbasis_equality_gap"] = eq_gap;
  if (eq_gap > 1e-10) failed = true;

  if (level >= 2) {
    const OracleReport ext = prop4_sampling_oracle(
        channel, cd.p, channel.dim(), std::max(1, cfg.options.samples / 2), s_ext);
    violations += ext.violations;
    oracles["extension"] = joracle(ext);

    const int prod_samples = std::max(1, std::min(200, cfg.options.samples / 5));
    const OracleReport prod = prop5_sampling_oracle(channel, channel, cd.p, cd.p,
                                                    prod_samples, s_prod);
    violations += prod.violations;
    oracles["product"] = joracle(prod);

    const WeakAdditivityReport weak = weak_additivity_check(
        channel, cfg.options.restarts, s_weak, cfg.options.log_base);
    j["weak_additivity"] = {{"level2_min", weak.level2_min},
                            {"twice_entropy", weak.twice_entropy},
                            {"gap", weak.gap},
                            {"product_warm_start_ok", weak.product_warm_start_ok},
                            {"pass", weak.pass},
                            {"restarts", weak.restarts_used},
                            {"converged", weak.converged}};
    if (!weak.pass) failed = true;

    Rng trng(s_twirl);
    double twirl_max = -1.0;
    bool twirl_ok = true;
    const int twirl_states = 10;
    for (int i = 0; i < twirl_states; ++i) {
      const PureState f = seeded_state(trng, channel.dim() * channel.dim());
      const TwirlReport tw = twirl_identity_check(channel, channel, f);
      if (!tw.spanning || !tw.ok) twirl_ok = false;
      twirl_max = std::max(twirl_max, tw.residual);
    }
    j["twirl"] = {{"states", twirl_states},
                  {"max_residual", twirl_max},
                  {"ok", twirl_ok}};
    if (!twirl_ok) failed = true;
  }

  j["oracles"] = std::move(oracles);
  j["violations_total"] = violations;
  if (violations > 0) failed = true;
  return RunResult{std::move(j), failed ? 1 : 0};
}

std::string render_text(const ordered_json& report, double seconds) {
  std::ostringstream os;
  const std::string command = report.value("command", "unknown");
  os << "covacap " << command << "\n";
  if (command == "describe") {
    os << "  group order " << report["group"]["order"] << ", dimension "
       << report["group"]["dimension"] << "\n";
    const auto& r = report["representation"];
    os << "  commutant dimension " << r["commutant_dimension"]
       << (r["irreducible"].get<bool>() ? " (irreducible)" : " (reducible)")
       << "\n";
    os << "  cocycle identity " << (r["cocycle_identity_ok"].get<bool>() ? "ok" : "FAILED")
       << ", root condition "
       << (r["cocycle_root_ok"].get<bool>() ? "ok" : "FAILED") << ", spanning "
       << (r["spanning"].get<bool>() ? "yes" : "no") << "\n";
    os << "  subgroup candidates: " << report["subgroup_candidates"].size() << "\n";
    for (const auto& c : report["subgroup_candidates"]) {
      os << "    members " << c["members"].dump() << " p=" << c["p"].dump()
         << (c["admissible"].get<bool>() ? " admissible" : " not admissible")
         << "\n";
    }
  } else if (command == "capacity") {
    os << "  status: " << report["status"].get<std::string>() << "\n";
    if (!report["capacity"].is_null()) {
      const std::string unit =
          report["log_base"].get<std::string>() == "2" ? "bits" : "nats";
      os << "  capacity C = C1 = " << report["capacity"].get<double>() << " "
         << unit << "\n";
      os << "  entropy of p: " << report["entropy_p"].get<double>() << " " << unit
         << "\n";
      os << "  subgroup: " << report["subgroup"].dump() << "\n";
      os << "  p: " << report["p"]["values"].dump() << "\n";
    }
    if (report.contains("optimizer")) {
      os << "  optimizer min entropy " << report["optimizer"]["min_entropy"].get<double>()
         << " (restarts " << report["optimizer"]["restarts"] << ")\n";
      if (!report["optimizer"]["cross_check_gap"].is_null())
        os << "  cross-check gap " << report["optimizer"]["cross_check_gap"].get<double>()
           << (report["optimizer"]["cross_check_ok"].get<bool>() ? " (ok)" : " (FAILED)")
           << "\n";
    }
    if (report.contains("one_shot_capacity_lower_bound"))
      os << "  one-shot capacity lower bound "
         << report["one_shot_capacity_lower_bound"].get<double>() << "\n";
  } else if (command == "verify") {
    os << "  level " << report["level"] << ", theorem "
       << (report["theorem_applies"].get<bool>() ? "applies" : "not applicable")
       << "\n";
    if (report.contains("warning"))
      os << "  warning: " << report["warning"].get<std::string>() << "\n";
    for (const auto& [name, oracle] : report["oracles"].items()) {
      os << "  oracle " << name << ": " << oracle["samples"] << " samples, "
         << oracle["violations"] << " violations, max slack "
         << oracle["max_slack"].get<double>() << "\n";
    }
    if (report.contains("eigenbasis_equality_gap"))
      os << "  eigenbasis equality gap "
         << report["eigenbasis_equality_gap"].get<double>() << "\n";
    if (report.contains("weak_additivity"))
      os << "  weak additivity gap " << report["weak_additivity"]["gap"].get<double>()
         << (report["weak_additivity"]["pass"].get<bool>() ? " (pass)" : " (FAILED)")
         << "\n";
    if (report.contains("twirl"))
      os << "  twirl max residual " << report["twirl"]["max_residual"].get<double>()
         << (report["twirl"]["ok"].get<bool>() ? " (ok)" : " (FAILED)") << "\n";
    if (report.contains("violations_total") &&
        !report["violations_total"].is_null())
      os << "  total violations: " << report["violations_total"] << "\n";
  }
  os << "  elapsed: " << seconds << " s\n";
  return os.str();
}

}  // namespace covacap
