#include "tablecount/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "tablecount/errors.hpp"
#include "tablecount/json_io.hpp"

namespace tablecount::cli {

namespace {

// Raised for bad flag combinations found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a verification finds a mismatch; payload is still printed.
struct InvariantError : std::runtime_error {
  InvariantError(std::string what, Json payload) : std::runtime_error(std::move(what)), payload(std::move(payload)) {}
  Json payload;
};

struct Options {
  std::vector<Degree> rows, cols;
  std::string margins_file;
  std::string allowed = "all";
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::string formula = "main";
  std::optional<double> delta;
  std::int64_t m = 0, n = 0, s = 0, t = 0, S = 0;
  std::optional<std::int64_t> k;
  std::string family = "regular";
  std::vector<std::int64_t> sizes;
  std::string mode;
  std::int64_t samples = 0;
  std::string matrix_file;
  std::string entries;
  Degree D = 2;
  std::string site;
  bool restricted = false;
  bool extract_delta = false;
  std::string suite = "all";
};

GuardLimits limits_from_env() {
  GuardLimits limits;
  if (const char* v = std::getenv("TABLECOUNT_GUARD_OVERRIDE"); v && std::string(v) == "1") {
    limits.override_guards = true;
  }
  return limits;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

MarginPair margins_of(const Options& o) {
  if (!o.margins_file.empty()) {
    if (!o.rows.empty() || !o.cols.empty()) throw UsageError("give --margins or --rows/--cols, not both");
    return margins_from_json(read_json_file(o.margins_file));
  }
  if (o.rows.empty() || o.cols.empty()) throw UsageError("margins required: --rows and --cols, or --margins");
  return validate_margins(o.rows, o.cols);
}

EntryAlphabet alphabet_of(const std::string& spec) {
  if (spec == "all") return EntryAlphabet::all();
  if (spec == "01") return EntryAlphabet::zero_one();
  if (spec == "0-3" || spec == "0123") return EntryAlphabet::zero_to_three();
  std::set<Degree> members;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      members.insert(v);
    } catch (const std::exception&) {
      throw UsageError("--allowed: expected all, 01, 0-3 or a comma list of integers");
    }
  }
  return EntryAlphabet::finite(std::move(members));
}

TableMatrix matrix_of(const Options& o) {
  if (!o.matrix_file.empty()) return matrix_from_json(read_json_file(o.matrix_file));
  if (o.entries.empty()) throw UsageError("matrix required: --matrix file.json or --entries");
  // rows separated by ';', entries by ','
  std::vector<std::vector<Degree>> rows;
  std::stringstream in(o.entries);
  std::string row;
  while (std::getline(in, row, ';')) {
    auto& out = rows.emplace_back();
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        out.push_back(std::stoll(cell));
      } catch (const std::exception&) {
        throw UsageError("--entries: bad integer '" + cell + "'");
      }
    }
  }
  return TableMatrix::from_rows(rows);
}

SwitchingSite site_of(const std::string& spec, Degree D) {
  // "i0:j0,i1:j1,..."
  SwitchingSite site{D, {}};
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--site: expected row:col pairs");
    try {
      site.positions.push_back({std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw UsageError("--site: bad cell '" + item + "'");
    }
  }
  return site;
}

FormulaId formula_of(const std::string& name) {
  if (auto id = parse_formula(name)) return *id;
  throw UsageError("unknown formula '" + name + "'");
}

bool uses_semiregular_flags(const Options& o) { return o.rows.empty() && o.margins_file.empty() && o.m > 0; }

// Semiregular and cm accept --m --s --n --t in place of margins.
MarginPair margins_or_semiregular(const Options& o) {
  if (uses_semiregular_flags(o)) return SemiregularSpec::make(o.m, o.s, o.n, o.t).margins();
  return margins_of(o);
}

// ------------------------------------------------------------- commands

Json cmd_moments(const Options& o) {
  const MarginPair margins = margins_of(o);
  Json sums = Json::array();
  for (int k = 1; k <= 4; ++k) {
    const PowerSums p = power_sums(margins, k);
    sums.push_back({{"k", k}, {"S", to_json(p.rows)}, {"T", to_json(p.cols)}});
  }
  return {{"margins", to_json(margins)}, {"total", margins.total()}, {"power_sums", sums},
          {"moments", to_json(central_moments(margins))}};
}

Json cmd_classify(const Options& o) { return to_json(classify_regime(margins_of(o))); }

Json cmd_count_exact(const Options& o, const GuardLimits& limits) {
  return to_json(count_exact(margins_of(o), alphabet_of(o.allowed), limits));
}

Json cmd_count_bruteforce(const Options& o, const GuardLimits& limits) {
  return {{"count", to_json(count_bruteforce(margins_of(o), alphabet_of(o.allowed), limits))}};
}

Json cmd_sample_matrix(const Options& o, const GuardLimits& limits) {
  const MarginPair margins = margins_of(o);
  UniformSampler sampler(margins, alphabet_of(o.allowed), limits);
  Json samples = Json::array();
  const std::int64_t draws = std::max<std::int64_t>(o.samples, 1);
  for (std::int64_t i = 0; i < draws; ++i) {
    samples.push_back(to_json(sampler.draw(*o.seed + static_cast<std::uint64_t>(i))));
  }
  return {{"class_size", to_json(sampler.class_size())}, {"seed", *o.seed}, {"samples", samples}};
}

Json cmd_composition_law(const Options& o) {
  if (o.m < 1 || o.n < 1 || o.S < 0) throw UsageError("composition-law needs --m, --n >= 1 and --S >= 0");
  Json law = Json::array();
  const std::int64_t lo = o.k ? *o.k : 0;
  const std::int64_t hi = o.k ? *o.k : o.S;
  for (std::int64_t k = lo; k <= hi; ++k) {
    law.push_back({{"k", k}, {"probability", to_json(row_sum_distribution(o.m, o.n, o.S, k))}});
  }
  Json j = {{"m", o.m}, {"n", o.n}, {"S", o.S}, {"row_sum_distribution", law}};
  if (o.m * o.n > 0 && o.S > 0) j["expected_moments"] = to_json(expected_moments(o.m, o.n, o.S));
  return j;
}

Json cmd_estimate(const Options& o, const GuardLimits& limits) {
  const FormulaId formula = formula_of(o.formula);
  const MarginPair margins = margins_or_semiregular(o);
  EstimateOptions eo{alphabet_of(o.allowed), static_cast<long double>(o.delta.value_or(0.0))};
  if (o.delta && formula != FormulaId::CanfieldMcKay) throw UsageError("--delta applies to --formula cm only");
  Json j = to_json(estimate_for(formula, margins, eo));
  if (formula == FormulaId::NearRegular) j["decomposition"] = to_json(decompose_mp1p2e(margins));
  if (o.extract_delta) {
    if (formula != FormulaId::CanfieldMcKay) throw UsageError("--extract-delta applies to --formula cm only");
    const CountResult exact = count_exact(margins, EntryAlphabet::all(), limits);
    j["exact_count"] = to_json(exact.count);
    j["delta_extraction"] = to_json(delta_from_count(SemiregularSpec::from_margins(margins), log_of(exact.count)));
  }
  return j;
}

struct Tabular {
  std::vector<ComparisonRow> rows;
  bool single = false;
};

Tabular cmd_compare(const Options& o, const GuardLimits& limits) {
  const FormulaId formula = formula_of(o.formula);
  const MarginPair margins = margins_or_semiregular(o);
  EstimateOptions eo{alphabet_of(o.allowed), static_cast<long double>(o.delta.value_or(0.0))};
  return {{compare(std::string(to_string(formula)), margins, formula, eo, limits)}, true};
}

Tabular cmd_convergence(const Options& o, const GuardLimits& limits) {
  if (o.family != "regular") throw UsageError("only --family regular is supported");
  if (o.sizes.empty()) throw UsageError("--sizes required");
  EstimateOptions eo{alphabet_of(o.allowed), static_cast<long double>(o.delta.value_or(0.0))};
  return {convergence_report({o.s, o.t}, o.sizes, formula_of(o.formula), eo, limits), false};
}

Json cmd_pairing(const Options& o, const GuardLimits& limits) {
  const MarginPair margins = margins_of(o);
  if (o.mode == "enumerate") {
    return {{"margins", to_json(margins)}, {"statistics", to_json(exhaustive_statistics(margins, limits))}};
  }
  if (o.mode == "sample") {
    if (!o.seed) throw UsageError("pairing --mode sample requires --seed");
    const Pairing p = random_pairing(margins, *o.seed);
    const WeightedMultiplicity wm = multiplicity_and_weight(p);
    Json mult = Json::object();
    for (const auto& [r, count] : wm.multiplicities) mult[std::to_string(r)] = count;
    Json j = {{"seed", *o.seed},
              {"image", p.image()},
              {"matrix", to_json(pairing_to_matrix(p))},
              {"multiplicities", mult},
              {"weight", to_json(wm.weight)},
              {"doublets", doublet_count(p)}};
    if (o.samples > 0) {
      j["monte_carlo"] = to_json(monte_carlo_simple_fraction(margins, o.samples, *o.seed));
      try {
        j["p0_formula"] = to_double(class_probabilities(margins).p[0]);
      } catch (const TableError& e) {
        if (e.kind() != ErrorKind::UndefinedMoment) throw;
        j["p0_formula"] = nullptr;
      }
    }
    return j;
  }
  if (o.mode == "moments") {
    Json j = {{"margins", to_json(margins)}, {"doublet_moments", to_json(doublet_moments(margins))}};
    try {
      j["class_probabilities"] = to_json(class_probabilities(margins));
    } catch (const TableError& e) {
      if (e.kind() != ErrorKind::UndefinedMoment) throw;
      j["class_probabilities"] = nullptr;
    }
    return j;
  }
  if (o.mode == "identity") {
    const auto all = verify_weight_identity(margins, [](const MultiplicityVector&) { return true; }, limits);
    const auto simple = verify_weight_identity(
        margins,
        [](const MultiplicityVector& a) {
          return std::all_of(a.begin(), a.end(), [](const auto& kv) { return kv.first <= 1 || kv.second == 0; });
        },
        limits);
    Json j = {{"margins", to_json(margins)}, {"all", to_json(all)}, {"zero_one", to_json(simple)}};
    if (!all.holds() || !simple.holds()) throw InvariantError("weight identity mismatch", j);
    return j;
  }
  throw UsageError("--mode must be enumerate, sample, moments or identity");
}

Json cmd_switch(const Options& o) {
  const TableMatrix q = matrix_of(o);
  if (o.mode == "enumerate") {
    return to_json(enumerate_switchings(q, o.D, o.restricted));
  }
  if (o.mode == "reverse-enumerate") {
    return to_json(enumerate_reverse_switchings(q, o.D));
  }
  if (o.mode == "bounds") {
    Json j = to_json(switching_bounds(q, o.D));
    j["forward_count"] = enumerate_switchings(q, o.D).count;
    return j;
  }
  if (o.mode == "apply" || o.mode == "reverse") {
    const bool forward = o.mode == "apply";
    SwitchingSite site;
    if (!o.site.empty()) {
      site = site_of(o.site, o.D);
    } else {
      const auto sites = forward ? enumerate_switchings(q, o.D, o.restricted) : enumerate_reverse_switchings(q, o.D);
      if (sites.sites.empty()) throw TableError(ErrorKind::NotApplicable, "no switching site in this matrix");
      site = sites.sites.front();
    }
    const TableMatrix r = forward ? apply_switching(q, site) : apply_reverse_switching(q, site);
    if (r.row_sums() != q.row_sums() || r.col_sums() != q.col_sums()) {
      throw InvariantError("switching changed the margins", Json{{"site", to_json(site)}});
    }
    return {{"site", to_json(site)}, {"result", to_json(r)}};
  }
  throw UsageError("--mode must be apply, reverse, enumerate, reverse-enumerate or bounds");
}

// ------------------------------------------------------------- verify

struct SuiteTally {
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (notes.size() < 20) notes.push_back(what);
    }
  }
};

std::string describe(const MarginPair& m) { return to_json(m).dump(); }

// All margin pairs with at most 3 rows and columns, entries and total small.
template <typename Fn>
void for_small_margins(Degree max_total, Fn&& fn) {
  std::vector<std::vector<Degree>> seqs;
  for (std::size_t len = 1; len <= 3; ++len) {
    std::vector<Degree> v(len, 1);
    while (true) {
      seqs.push_back(v);
      std::size_t i = 0;
      while (i < len && v[i] == 3) v[i++] = 1;
      if (i == len) break;
      ++v[i];
    }
  }
  for (const auto& r : seqs) {
    for (const auto& c : seqs) {
      Degree sr = 0, sc = 0;
      for (Degree x : r) sr += x;
      for (Degree x : c) sc += x;
      if (sr == sc && sr <= max_total) fn(validate_margins(r, c));
    }
  }
}

void suite_oracle(SuiteTally& tally, const GuardLimits& limits) {
  const std::vector<EntryAlphabet> alphabets = {EntryAlphabet::all(), EntryAlphabet::zero_one(),
                                                EntryAlphabet::zero_to_three(), EntryAlphabet::finite({0, 1, 3})};
  for_small_margins(6, [&](const MarginPair& m) {
    for (const auto& a : alphabets) {
      const BigInt brute = count_bruteforce(m, a, limits);
      tally.expect(count_exact(m, a, limits).count == brute, "count_exact " + describe(m));
      tally.expect(count_exact_serial(m, a, limits).count == brute, "count_exact_serial " + describe(m));
    }
  });
}

void suite_identity(SuiteTally& tally, const GuardLimits& limits) {
  for_small_margins(5, [&](const MarginPair& m) {
    const auto all = verify_weight_identity(m, [](const MultiplicityVector&) { return true; }, limits);
    tally.expect(all.holds() && all.lhs == count_exact(m, EntryAlphabet::all(), limits).count,
                 "weight identity " + describe(m));
  });
}

void suite_inequality(SuiteTally& tally) {
  for (int n = 1; n <= 20; ++n) {
    for (int j = 1; j <= 20; ++j) {
      const double q = j / 10.0;
      const std::int64_t kmax = (10 * n) / j;
      for (std::int64_t k = 1; k <= kmax; ++k) {
        const auto c = useful_inequality_check(n, q, k);
        tally.expect(c.hypothesis_ok && c.holds, "n=" + std::to_string(n) + " q=" + std::to_string(q) +
                                                     " k=" + std::to_string(k));
      }
    }
  }
}

void suite_switching(SuiteTally& tally, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(3, 5);
  std::discrete_distribution<int> entry({6, 3, 2, 1});
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = static_cast<std::size_t>(dim(rng)), n = static_cast<std::size_t>(dim(rng));
    TableMatrix q(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) q(i, j) = entry(rng);
    const Degree D = 2 + static_cast<Degree>(rng() % 2);
    const auto sites = enumerate_switchings(q, D);
    const auto bounds = switching_bounds(q, D);
    tally.expect(BigInt(sites.count) >= bounds.lower, "forward lower bound, trial " + std::to_string(trial));
    if (sites.sites.empty()) continue;
    const auto& site = sites.sites[rng() % sites.sites.size()];
    const TableMatrix r = apply_switching(q, site);
    tally.expect(r.row_sums() == q.row_sums() && r.col_sums() == q.col_sums(),
                 "margins preserved, trial " + std::to_string(trial));
    tally.expect(apply_reverse_switching(r, site) == q, "reverse restores, trial " + std::to_string(trial));
    const auto reverse = enumerate_reverse_switchings(r, D);
    tally.expect(BigInt(reverse.count) <= switching_bounds(r, D).upper_reverse,
                 "reverse upper bound, trial " + std::to_string(trial));
  }
}

Json cmd_verify(const Options& o, const GuardLimits& limits) {
  const std::vector<std::string> known = {"oracle", "identity", "inequality", "switching"};
  std::vector<std::string> suites;
  if (o.suite == "all") {
    suites = known;
  } else if (std::find(known.begin(), known.end(), o.suite) != known.end()) {
    suites = {o.suite};
  } else {
    throw UsageError("--suite must be all, oracle, identity, inequality or switching");
  }
  const bool randomized = std::find(suites.begin(), suites.end(), "switching") != suites.end();
  if (randomized && !o.seed) throw UsageError("verify --suite " + o.suite + " requires --seed");

  Json results = Json::array();
  bool ok = true;
  for (const auto& name : suites) {
    SuiteTally tally;
    if (name == "oracle") suite_oracle(tally, limits);
    if (name == "identity") suite_identity(tally, limits);
    if (name == "inequality") suite_inequality(tally);
    if (name == "switching") suite_switching(tally, *o.seed);
    ok = ok && tally.failures == 0;
    results.push_back({{"suite", name}, {"checks", tally.checks}, {"failures", tally.failures},
                       {"passed", tally.failures == 0}, {"notes", tally.notes}});
  }
  Json j = {{"passed", ok}, {"suites", results}};
  if (!ok) throw InvariantError("verification failed", j);
  return j;
}

// ------------------------------------------------------------- wiring

void add_margin_flags(CLI::App* sub, Options& o) {
  sub->add_option("--rows", o.rows, "row sums, comma separated")->delimiter(',');
  sub->add_option("--cols", o.cols, "column sums, comma separated")->delimiter(',');
  sub->add_option("--margins", o.margins_file, "JSON file {\"rows\":[...],\"cols\":[...]}");
}

void add_format_flag(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_semiregular_flags(CLI::App* sub, Options& o) {
  sub->add_option("--m", o.m, "number of rows (semiregular)");
  sub->add_option("--s", o.s, "row sum (semiregular)");
  sub->add_option("--n", o.n, "number of columns (semiregular)");
  sub->add_option("--t", o.t, "column sum (semiregular)");
}

void emit(std::ostream& out, const Json& payload, const std::string& format) {
  if (format == "csv") {
    // Flat objects only: one header line, one value line.
    std::string header, values;
    for (const auto& [key, value] : payload.items()) {
      if (value.is_structured()) continue;
      header += (header.empty() ? "" : ",") + key;
      values += (values.empty() ? "" : ",") + (value.is_string() ? value.get<std::string>() : value.dump());
    }
    out << header << '\n' << values << '\n';
    return;
  }
  out << payload.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact counts and asymptotic estimates for contingency tables", "tablecount"};
  app.require_subcommand(1);

  auto* moments = app.add_subcommand("moments", "power sums and scaled central moments");
  add_margin_flags(moments, o);

  auto* classify = app.add_subcommand("classify", "regime report");
  add_margin_flags(classify, o);

  auto* count_ex = app.add_subcommand("count-exact", "exact count by dynamic programming");
  add_margin_flags(count_ex, o);
  count_ex->add_option("--allowed", o.allowed, "entry alphabet: all, 01, 0-3 or a list such as 0,1,3");

  auto* count_bf = app.add_subcommand("count-bruteforce", "exact count by enumeration (small inputs)");
  add_margin_flags(count_bf, o);
  count_bf->add_option("--allowed", o.allowed, "entry alphabet");

  auto* sample = app.add_subcommand("sample-matrix", "uniform sample from the margin class");
  add_margin_flags(sample, o);
  sample->add_option("--allowed", o.allowed, "entry alphabet");
  sample->add_option("--seed", o.seed, "random seed")->required();
  sample->add_option("--samples", o.samples, "number of draws (seeds seed, seed+1, ...)");

  auto* law = app.add_subcommand("composition-law", "row-sum law and expected moments of a random composition");
  law->add_option("--m", o.m, "rows")->required();
  law->add_option("--n", o.n, "columns")->required();
  law->add_option("--S", o.S, "total")->required();
  law->add_option("--k", o.k, "single row-sum value");

  auto* estimate = app.add_subcommand("estimate", "asymptotic estimate in log space");
  add_margin_flags(estimate, o);
  add_semiregular_flags(estimate, o);
  estimate->add_option("--formula", o.formula, "main|01|semiregular|moments|nearreg|restricted|cm");
  estimate->add_option("--allowed", o.allowed, "entry alphabet (restricted)");
  estimate->add_option("--delta", o.delta, "residual exponent (cm)");
  estimate->add_flag("--extract-delta", o.extract_delta, "solve for the residual exponent from the exact count (cm)");

  auto* cmp = app.add_subcommand("compare", "exact count against one estimate");
  add_margin_flags(cmp, o);
  add_semiregular_flags(cmp, o);
  add_format_flag(cmp, o);
  cmp->add_option("--formula", o.formula, "estimate to compare");
  cmp->add_option("--allowed", o.allowed, "entry alphabet (restricted)");
  cmp->add_option("--delta", o.delta, "residual exponent (cm)");

  auto* conv = app.add_subcommand("convergence", "comparison rows over a regular family");
  add_format_flag(conv, o);
  conv->add_option("--family", o.family, "family (regular)");
  conv->add_option("--s", o.s, "row sum")->required();
  conv->add_option("--t", o.t, "column sum")->required();
  conv->add_option("--sizes", o.sizes, "row counts, comma separated")->delimiter(',')->required();
  conv->add_option("--formula", o.formula, "estimate to compare");
  conv->add_option("--allowed", o.allowed, "entry alphabet (restricted)");

  auto* pairing = app.add_subcommand("pairing", "pairing model");
  add_margin_flags(pairing, o);
  pairing->add_option("--mode", o.mode, "enumerate|sample|moments|identity")->required();
  pairing->add_option("--seed", o.seed, "random seed (sample)");
  pairing->add_option("--samples", o.samples, "Monte Carlo samples (sample)");

  auto* sw = app.add_subcommand("switch", "D-switchings on a matrix");
  sw->add_option("--matrix", o.matrix_file, "JSON file {\"entries\": [[...], ...]}");
  sw->add_option("--entries", o.entries, "inline matrix, rows split by ';' and entries by ','");
  sw->add_option("--D", o.D, "switching order")->check(CLI::Range(2, 1000));
  sw->add_option("--mode", o.mode, "apply|reverse|enumerate|reverse-enumerate|bounds")->required();
  sw->add_option("--site", o.site, "cells i0:j0,i1:j1,... (apply, reverse)");
  sw->add_flag("--restricted", o.restricted, "diagonal entries must equal 1");

  auto* verify = app.add_subcommand("verify", "self-check suites");
  verify->add_option("--suite", o.suite, "all|oracle|identity|inequality|switching");
  verify->add_option("--seed", o.seed, "random seed (switching)");

  auto current_help = [&]() {
    for (auto* sub : app.get_subcommands()) return sub->help();
    return app.help();
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << current_help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << current_help();
    return Usage;
  }

  const GuardLimits limits = limits_from_env();
  try {
    Json payload;
    if (moments->parsed()) payload = cmd_moments(o);
    else if (classify->parsed()) payload = cmd_classify(o);
    else if (count_ex->parsed()) payload = cmd_count_exact(o, limits);
    else if (count_bf->parsed()) payload = cmd_count_bruteforce(o, limits);
    else if (sample->parsed()) payload = cmd_sample_matrix(o, limits);
    else if (law->parsed()) payload = cmd_composition_law(o);
    else if (estimate->parsed()) payload = cmd_estimate(o, limits);
    else if (pairing->parsed()) payload = cmd_pairing(o, limits);
    else if (sw->parsed()) payload = cmd_switch(o);
    else if (verify->parsed()) payload = cmd_verify(o, limits);
    else {
      const Tabular table = cmp->parsed() ? cmd_compare(o, limits) : cmd_convergence(o, limits);
      if (o.format == "csv") {
        out << rows_to_csv(table.rows);
      } else if (table.single) {
        out << to_json(table.rows.front()).dump() << '\n';
      } else {
        Json rows = Json::array();
        for (const auto& r : table.rows) rows.push_back(to_json(r));
        out << Json{{"rows", rows}}.dump() << '\n';
      }
      return Ok;
    }
    emit(out, payload, o.format);
    return Ok;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << current_help();
    return Usage;
  } catch (const InvariantError& e) {
    out << e.payload.dump() << '\n';
    err << "invariant failure: " << e.what() << '\n';
    return InvariantFailure;
  } catch (const TableError& e) {
    err << "error: " << e.what() << '\n';
    return e.is_guard() ? GuardExceeded : Usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return InvariantFailure;
  }
}

}  // namespace tablecount::cli
