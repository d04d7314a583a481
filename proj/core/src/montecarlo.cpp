#include "shufflekit/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <utility>

#include "shufflekit/closed_form.hpp"
#include "shufflekit/errors.hpp"

namespace shufflekit::mc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using Labels = std::vector<int>;

void top_in_at_random(Labels& deck, Engine& rng) {
  const int top = deck.front();
  deck.erase(deck.begin());
  const auto slot = uniform_below(rng, deck.size() + 1);
  deck.insert(deck.begin() + static_cast<std::ptrdiff_t>(slot), top);
}

// Each card picks a pile independently: multinomial cut plus a uniformly
// random interleaving of the piles.
void gsr_riffle(Labels& deck, int packets, Engine& rng) {
  const std::size_t n = deck.size();
  std::vector<int> word(n);
  std::vector<std::size_t> next(packets, 0);
  for (auto& letter : word) {
    letter = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(packets)));
    ++next[letter];
  }
  std::size_t start = 0;
  for (auto& slot : next) start += std::exchange(slot, start);
  Labels out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = deck[next[word[i]]++];
  deck.swap(out);
}

void physical_riffle(Labels& deck, const PhysicalRiffle& params, Engine& rng) {
  const int n = static_cast<int>(deck.size());
  const int lo = std::max(0, n / 2 - params.cut_spread);
  const int hi = std::min(n, n / 2 + params.cut_spread);
  const int cut = lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
  int side = static_cast<int>(uniform_below(rng, 2));
  int index[2] = {0, cut};
  const int end[2] = {cut, n};
  Labels out;
  out.reserve(n);
  while (index[0] < end[0] && index[1] < end[1]) {
    const int remaining = end[side] - index[side];
    const int choices = std::min(params.max_packet, remaining);
    const int take = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(choices)));
    for (int i = 0; i < take; ++i) out.push_back(deck[index[side]++]);
    side ^= 1;
  }
  for (int h = 0; h < 2; ++h) {
    while (index[h] < end[h]) out.push_back(deck[index[h]++]);
  }
  deck.swap(out);
}

void fisher_yates(Labels& deck, Engine& rng) {
  for (std::size_t i = deck.size(); i > 1; --i) {
    const auto j = uniform_below(rng, i);
    std::swap(deck[i - 1], deck[j]);
  }
}

void shuffle_labels(Labels& deck, const ShuffleModel& model, Engine& rng) {
  std::visit(Overloaded{
                 [&](const TopInAtRandom&) { top_in_at_random(deck, rng); },
                 [&](const GsrRiffle& g) { gsr_riffle(deck, g.packets, rng); },
                 [&](const PhysicalRiffle& p) { physical_riffle(deck, p, rng); },
                 [&](const NaiveUniform&) { fisher_yates(deck, rng); },
                 [&](const auto&) {
                   Arrangement next = apply_deterministic(model, Arrangement(deck));
                   deck.assign(next.labels().begin(), next.labels().end());
                 },
             },
             model.kind());
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
  return Engine(mix_seed(seed, stream));
}

std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("uniform_below: empty range");
  __extension__ typedef unsigned __int128 u128;
  std::uint64_t x = rng();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Arrangement shuffle_once(const Arrangement& deck, const ShuffleModel& model, Engine& rng) {
  Labels labels(deck.labels().begin(), deck.labels().end());
  shuffle_labels(labels, model, rng);
  return Arrangement(std::move(labels));
}

std::map<Rank, std::uint64_t> EmpiricalDistribution::nonzero() const {
  std::map<Rank, std::uint64_t> out;
  for (std::uint64_t r = 0; r < counts.size(); ++r) {
    if (counts[r] != 0) out.emplace(Rank{r}, counts[r]);
  }
  return out;
}

EmpiricalDistribution run_trials(const SimulationConfig& cfg, unsigned threads) {
  if (cfg.n < 1) throw InvalidArgument("deck size must be >= 1, got " + std::to_string(cfg.n));
  if (cfg.n > kMaxCountingN) {
    throw ResourceLimit("counting outcomes for n=" + std::to_string(cfg.n) +
                        " exceeds the limit n <= " + std::to_string(kMaxCountingN));
  }
  if (cfg.trials < 1) throw InvalidArgument("trials must be >= 1");
  if (cfg.hands < 0) throw InvalidArgument("hands must be >= 0");
  if (cfg.model.is_deterministic()) {
    // Validate once up front (e.g. odd n for Faro) instead of inside workers.
    (void)deterministic_permutation(cfg.model, cfg.n);
  }

  const std::uint64_t streams = (cfg.trials + kTrialsPerStream - 1) / kTrialsPerStream;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, streams));

  const std::size_t outcomes = factorial(cfg.n);
  std::vector<std::vector<std::uint64_t>> partial(threads,
                                                  std::vector<std::uint64_t>(outcomes, 0));
  std::atomic<std::uint64_t> next_stream{0};

  auto worker = [&](unsigned id) {
    auto& counts = partial[id];
    Labels deck(cfg.n);
    for (std::uint64_t s = next_stream++; s < streams; s = next_stream++) {
      Engine rng = make_engine(cfg.seed, s);
      const std::uint64_t first = s * kTrialsPerStream;
      const std::uint64_t last = std::min(cfg.trials, first + kTrialsPerStream);
      for (std::uint64_t t = first; t < last; ++t) {
        for (int i = 0; i < cfg.n; ++i) deck[i] = i + 1;
        for (int h = 0; h < cfg.hands; ++h) shuffle_labels(deck, cfg.model, rng);
        ++counts[rank(Arrangement(deck)).value];
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (auto& t : pool) t.join();
  }

  EmpiricalDistribution out{cfg.n, cfg.trials, std::vector<std::uint64_t>(outcomes, 0)};
  for (const auto& counts : partial) {
    for (std::size_t r = 0; r < outcomes; ++r) out.counts[r] += counts[r];
  }
  return out;
}

Rational empirical_tv_exact(const EmpiricalDistribution& e, const Distribution& q) {
  if (e.n != q.n()) {
    throw InvalidArgument("empirical_tv: deck sizes differ (" + std::to_string(e.n) + " vs " +
                          std::to_string(q.n()) + ")");
  }
  const BigInt trials = static_cast<unsigned long>(e.trials);
  Rational sum = 0;
  for (std::size_t r = 0; r < e.counts.size(); ++r) {
    Rational freq(BigInt(static_cast<unsigned long>(e.counts[r])), trials);
    freq.canonicalize();
    sum += abs(freq - q[r]);
  }
  return sum / 2;
}

double empirical_tv(const EmpiricalDistribution& e, const Distribution& q) {
  return to_double(empirical_tv_exact(e, q));
}

Distribution to_distribution(const EmpiricalDistribution& e) {
  const BigInt trials = static_cast<unsigned long>(e.trials);
  std::vector<Rational> entries(e.counts.size());
  for (std::size_t r = 0; r < e.counts.size(); ++r) {
    entries[r] = Rational(BigInt(static_cast<unsigned long>(e.counts[r])), trials);
    entries[r].canonicalize();
  }
  return Distribution(e.n, std::move(entries));
}

PhysicalVsGsrReport compare_physical_vs_gsr(int n, std::uint64_t trials, std::uint64_t seed,
                                            PhysicalRiffle params, unsigned threads) {
  if (n < 1 || n > 6) {
    throw InvalidArgument("physical-vs-GSR comparison needs 1 <= n <= 6, got " +
                          std::to_string(n));
  }
  const ShuffleModel physical(params);
  const auto empirical = run_trials({physical, n, 1, trials, seed}, threads);

  PhysicalVsGsrReport report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.params = params;
  const Distribution gsr = closed_form::riffle_k_law(n, 1);
  report.empirical_vs_gsr = empirical_tv(empirical, gsr);

  try {
    const StepDistribution step = brute_force_distribution(physical, n);
    std::vector<Rational> dense(factorial(n));
    for (const auto& [r, p] : step.probs) dense[r.value] = p;
    const Distribution exact(n, std::move(dense));
    report.exact_physical_vs_gsr = tv_distance(exact, gsr);
    report.empirical_vs_exact_physical = empirical_tv(empirical, exact);
  } catch (const ResourceLimit&) {
    // tree too large to enumerate; only the empirical comparison is reported
  }
  return report;
}

}  // namespace shufflekit::mc
