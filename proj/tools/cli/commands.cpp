#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "shufflekit/closed_form.hpp"
#include "shufflekit/errors.hpp"
#include "shufflekit/markov.hpp"
#include "shufflekit/montecarlo.hpp"

namespace shufflekit::cli {

using nlohmann::json;

namespace {

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string label_of(int n, std::uint64_t r) { return unrank(n, Rank{r}).to_string(); }

// Distribution reached from the identity after `hands` hands, via the
// exact transition matrix.
Distribution exact_law(const ShuffleModel& model, int n, int hands, const DeckCap& cap) {
  const TransitionMatrix m = transition_matrix(model, n, cap);
  return evolve(Distribution::point_mass(n), m, hands);
}

}  // namespace

DeckCap GlobalOptions::cap() const {
  return max_n_override ? DeckCap::with_override(*max_n_override) : DeckCap{};
}

ShuffleModel ModelOptions::build() const {
  if (name == "top") return TopInAtRandom{};
  if (name == "gsr" || name == "riffle") return GsrRiffle{packets};
  if (name == "physical") return PhysicalRiffle{cut_spread, max_packet};
  if (name == "faro-out") return FaroOut{};
  if (name == "faro-in") return FaroIn{};
  if (name == "mongean") return Mongean{};
  if (name == "naive") return NaiveUniform{};
  throw InvalidArgument("unknown model '" + name +
                        "' (expected top, gsr, physical, faro-out, faro-in, mongean, naive)");
}

std::string cmd_matrix(const MatrixArgs& args, const GlobalOptions& global) {
  if (args.power < 0) throw InvalidArgument("--power must be >= 0");
  const ShuffleModel model = args.model.build();
  const DeckCap cap = global.cap();
  cap.check(args.n, "transition matrix");
  const TransitionMatrix m = matrix_power(transition_matrix(model, args.n, cap), args.power);

  std::vector<std::string> labels;
  labels.reserve(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) labels.push_back(label_of(args.n, r));

  if (global.format == Format::kJson) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_rational_string(m(i, j)));
      rows.push_back(std::move(row));
    }
    return dump({{"n", args.n},
                 {"model", model.name()},
                 {"power", args.power},
                 {"labels", labels},
                 {"rows", std::move(rows)}});
  }
  std::string out;
  std::vector<std::string> header{"arrangement"};
  header.insert(header.end(), labels.begin(), labels.end());
  out += csv_row(header);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    std::vector<std::string> row{labels[i]};
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_rational_string(m(i, j)));
    out += csv_row(row);
  }
  return out;
}

std::string cmd_distance(const DistanceArgs& args, const GlobalOptions& global) {
  if (args.k_max < 0) throw InvalidArgument("--kmax must be >= 0");
  const ShuffleModel model = args.model.build();
  DistanceCurve curve;
  if (args.method == "exact") {
    curve = distance_curve_exact(model, args.n, args.k_max, global.cap());
  } else if (args.method == "closed-form" || args.method == "bound") {
    const auto* gsr = std::get_if<GsrRiffle>(&model.kind());
    if (gsr == nullptr || gsr->packets != 2) {
      throw InvalidArgument("method '" + args.method +
                            "' is only defined for the riffle model (gsr, 2 packets)");
    }
    curve = args.method == "bound" ? closed_form::coupling_bound_curve(args.n, args.k_max)
                                   : closed_form::riffle_distance_closed_form(args.n, args.k_max);
  } else {
    throw InvalidArgument("unknown method '" + args.method +
                          "' (expected exact, closed-form, bound)");
  }

  if (global.format == Format::kJson) {
    json points = json::array();
    for (const auto& p : curve.points) {
      points.push_back({{"k", p.k},
                        {"d_rational", to_rational_string(p.d)},
                        {"d_decimal", decimal(p.d, global.numbers)}});
    }
    return dump({{"n", curve.n},
                 {"model", curve.model},
                 {"method", to_string(curve.method)},
                 {"points", std::move(points)}});
  }
  std::string out = csv_row({"k", "d_rational", "d_decimal"});
  for (const auto& p : curve.points) {
    out += csv_row({std::to_string(p.k), to_rational_string(p.d), decimal(p.d, global.numbers)});
  }
  return out;
}

std::string cmd_faro(const FaroArgs& args, const GlobalOptions& global) {
  ShuffleModel model = FaroOut{};
  if (args.variant == "in") {
    model = FaroIn{};
  } else if (args.variant == "mongean") {
    model = Mongean{};
  } else if (args.variant != "out") {
    throw InvalidArgument("unknown variant '" + args.variant + "' (expected out, in, mongean)");
  }
  const std::uint64_t period = deterministic_period(model, args.n);

  std::optional<std::vector<int>> trace;
  if (args.trace_depth) {
    if (model.is<Mongean>()) throw InvalidArgument("--trace is only available for Faro variants");
    const int hands = args.hands ? *args.hands : static_cast<int>(period);
    trace = faro_trace(args.n, *args.trace_depth, hands, model.is<FaroOut>());
  }
  const bool show_period = args.period || !trace;

  if (global.format == Format::kJson) {
    json doc{{"n", args.n}, {"variant", args.variant}};
    if (trace) {
      json rows = json::array();
      for (std::size_t h = 0; h < trace->size(); ++h) {
        rows.push_back({{"hand", h}, {"position", (*trace)[h]}});
      }
      doc["trace"] = std::move(rows);
    }
    if (show_period) doc["period"] = period;
    return dump(doc);
  }
  std::string out;
  if (trace) {
    out += csv_row({"hand", "position"});
    for (std::size_t h = 0; h < trace->size(); ++h) {
      out += csv_row({std::to_string(h), std::to_string((*trace)[h])});
    }
  }
  if (show_period) {
    if (trace) out += '\n';
    out += csv_row({"period"});
    out += csv_row({std::to_string(period)});
  }
  return out;
}

std::string cmd_simulate(const SimulateArgs& args, const GlobalOptions& global) {
  if (args.hands < 0) throw InvalidArgument("--hands must be >= 0");
  const ShuffleModel model = args.model.build();
  Arrangement deck = Arrangement::identity(args.n);
  if (model.is_deterministic()) (void)deterministic_permutation(model, args.n);
  mc::Engine rng = mc::make_engine(global.seed, 0);

  std::vector<std::string> decks{deck.to_string()};
  for (int h = 0; h < args.hands; ++h) {
    deck = mc::shuffle_once(deck, model, rng);
    decks.push_back(deck.to_string());
  }

  if (global.format == Format::kJson) {
    json rows = json::array();
    for (std::size_t h = 0; h < decks.size(); ++h) {
      rows.push_back({{"hand", h}, {"arrangement", decks[h]}});
    }
    return dump({{"n", args.n},
                 {"model", model.name()},
                 {"seed", global.seed},
                 {"hands", std::move(rows)}});
  }
  std::string out = csv_row({"hand", "arrangement"});
  for (std::size_t h = 0; h < decks.size(); ++h) out += csv_row({std::to_string(h), decks[h]});
  return out;
}

std::string cmd_empirical(const EmpiricalArgs& args, const GlobalOptions& global) {
  const ShuffleModel model = args.model.build();
  std::optional<Distribution> reference;
  if (args.compare == "exact") {
    reference = exact_law(model, args.n, args.hands, global.cap());
  } else if (args.compare == "gsr") {
    reference = closed_form::riffle_k_law(args.n, args.hands);
  } else if (args.compare != "none") {
    throw InvalidArgument("unknown reference '" + args.compare + "' (expected exact, gsr, none)");
  }

  const auto e = mc::run_trials({model, args.n, args.hands, args.trials, global.seed});
  std::optional<Rational> tv;
  if (reference) tv = mc::empirical_tv_exact(e, *reference);

  const auto counts = e.nonzero();
  if (global.format == Format::kJson) {
    json count_map = json::object();
    for (const auto& [r, c] : counts) count_map[label_of(args.n, r.value)] = c;
    json doc{{"n", args.n},
             {"model", model.name()},
             {"hands", args.hands},
             {"trials", e.trials},
             {"seed", global.seed},
             {"counts", std::move(count_map)}};
    if (tv) {
      json tv_doc{{"reference", args.compare}, {"value", decimal(*tv, global.numbers)}};
      if (global.numbers.rational) tv_doc["rational"] = to_rational_string(*tv);
      doc["tv"] = std::move(tv_doc);
    } else {
      doc["tv"] = nullptr;
    }
    return dump(doc);
  }
  std::string out = csv_row({"record", "key", "value"});
  out += csv_row({"meta", "n", std::to_string(args.n)});
  out += csv_row({"meta", "model", model.name()});
  out += csv_row({"meta", "hands", std::to_string(args.hands)});
  out += csv_row({"meta", "trials", std::to_string(e.trials)});
  out += csv_row({"meta", "seed", std::to_string(global.seed)});
  for (const auto& [r, c] : counts) {
    out += csv_row({"count", label_of(args.n, r.value), std::to_string(c)});
  }
  if (tv) {
    out += csv_row({"tv", args.compare, decimal(*tv, global.numbers)});
    if (global.numbers.rational) {
      out += csv_row({"tv_rational", args.compare, to_rational_string(*tv)});
    }
  }
  return out;
}

namespace {

void add_model_options(CLI::App* cmd, ModelOptions& model) {
  cmd->add_option("--model", model.name,
                  "top | gsr | physical | faro-out | faro-in | mongean | naive")
      ->capture_default_str();
  cmd->add_option("--packets", model.packets, "GSR packet count a")->capture_default_str();
  cmd->add_option("--cut-spread", model.cut_spread, "physical riffle: cut = n/2 +/- spread")
      ->capture_default_str();
  cmd->add_option("--max-packet", model.max_packet, "physical riffle: largest packet")
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and Monte-Carlo analysis of card shuffles", "shufflekit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  std::string format = "csv";
  std::string out_path;
  int override_n = 0;
  app.add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "write output here instead of standard output");
  app.add_flag("--rational", global.numbers.rational, "also emit exact rationals");
  app.add_option("--precision", global.numbers.precision, "significant digits for decimals")
      ->check(CLI::Range(1, 100))
      ->capture_default_str();
  app.add_option("--seed", global.seed, "random seed")->capture_default_str();
  app.add_option("--max-n-override", override_n, "raise the exact-enumeration deck cap (<= 7)");

  MatrixArgs matrix;
  auto* matrix_cmd = app.add_subcommand("matrix", "k-th power of the exact transition matrix");
  add_model_options(matrix_cmd, matrix.model);
  matrix_cmd->add_option("--n", matrix.n, "deck size")->required();
  matrix_cmd->add_option("--power", matrix.power, "matrix power k")->capture_default_str();

  DistanceArgs distance;
  auto* distance_cmd = app.add_subcommand("distance", "distance to uniformity d(k)");
  add_model_options(distance_cmd, distance.model);
  distance_cmd->add_option("--n", distance.n, "deck size")->required();
  distance_cmd->add_option("--kmax", distance.k_max, "last hand")->capture_default_str();
  distance_cmd->add_option("--method", distance.method, "exact | closed-form | bound")
      ->capture_default_str();

  FaroArgs faro;
  int trace_depth = 0;
  int faro_hands = 0;
  auto* faro_cmd = app.add_subcommand("faro", "perfect-shuffle periods and card traces");
  faro_cmd->add_option("--n", faro.n, "deck size")->capture_default_str();
  faro_cmd->add_option("--variant", faro.variant, "out | in | mongean")->capture_default_str();
  auto* trace_opt = faro_cmd->add_option("--trace", trace_depth,
                                         "follow the card with this many cards above it");
  auto* hands_opt = faro_cmd->add_option("--hands", faro_hands, "trace length (default: period)");
  faro_cmd->add_flag("--period", faro.period, "print the shuffle period");

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "deck after each simulated hand");
  add_model_options(simulate_cmd, simulate.model);
  simulate_cmd->add_option("--n", simulate.n, "deck size")->capture_default_str();
  simulate_cmd->add_option("--hands", simulate.hands, "number of hands")->capture_default_str();

  EmpiricalArgs empirical;
  auto* empirical_cmd = app.add_subcommand("empirical", "Monte-Carlo law of k hands");
  add_model_options(empirical_cmd, empirical.model);
  empirical_cmd->add_option("--n", empirical.n, "deck size")->required();
  empirical_cmd->add_option("--hands", empirical.hands, "hands per trial")->capture_default_str();
  empirical_cmd->add_option("--trials", empirical.trials, "number of decks")
      ->capture_default_str();
  empirical_cmd->add_option("--compare", empirical.compare, "exact | gsr | none")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    global.format = format == "json" ? Format::kJson : Format::kCsv;
    if (app.count("--max-n-override") > 0) global.max_n_override = override_n;
    if (!out_path.empty()) global.out_path = out_path;
    if (*trace_opt) faro.trace_depth = trace_depth;
    if (*hands_opt) faro.hands = faro_hands;

    std::string text;
    if (*matrix_cmd) {
      text = cmd_matrix(matrix, global);
    } else if (*distance_cmd) {
      text = cmd_distance(distance, global);
    } else if (*faro_cmd) {
      text = cmd_faro(faro, global);
    } else if (*simulate_cmd) {
      text = cmd_simulate(simulate, global);
    } else {
      text = cmd_empirical(empirical, global);
    }

    if (global.out_path) {
      std::ofstream file(*global.out_path, std::ios::binary);
      if (!file) throw InvalidArgument("cannot open '" + *global.out_path + "' for writing");
      file << text;
    } else {
      out << text;
    }
    return kExitOk;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace shufflekit::cli
