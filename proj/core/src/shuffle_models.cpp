#include "shufflekit/shuffle_models.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "shufflekit/errors.hpp"

namespace shufflekit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_deck(int n) {
  if (n < 1) throw InvalidArgument("deck size must be >= 1, got " + std::to_string(n));
  if (n > kMaxRankableN) {
    throw InvalidArgument("deck size " + std::to_string(n) + " exceeds the rankable limit " +
                          std::to_string(kMaxRankableN));
  }
}

void add(StepDistribution& dist, const Arrangement& a, const Rational& p) {
  auto [it, inserted] = dist.probs.try_emplace(rank(a), p);
  if (!inserted) it->second += p;
}

// Pile-assignment words: position i of the output takes the next card of
// pile word[i]; piles are consecutive blocks of the identity deck.
Arrangement interleave_word(const std::vector<int>& word, int piles) {
  const int n = static_cast<int>(word.size());
  std::vector<int> next(piles, 0);
  for (int letter : word) ++next[letter];
  // Convert pile sizes to the 1-based label each pile starts at.
  int start = 1;
  for (int j = 0; j < piles; ++j) {
    int size = next[j];
    next[j] = start;
    start += size;
  }
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = next[word[i]]++;
  return Arrangement(std::move(labels));
}

StepDistribution brute_force_gsr(int n, int piles, std::uint64_t budget) {
  std::uint64_t leaves = 1;
  for (int i = 0; i < n; ++i) {
    if (leaves > budget / static_cast<std::uint64_t>(piles)) {
      throw ResourceLimit("brute-force GSR tree for n=" + std::to_string(n) + ", a=" +
                          std::to_string(piles) + " exceeds " + std::to_string(budget) +
                          " paths");
    }
    leaves *= static_cast<std::uint64_t>(piles);
  }
  StepDistribution dist{n, {}};
  const Rational weight(1, leaves);
  std::vector<int> word(n, 0);
  for (std::uint64_t w = 0; w < leaves; ++w) {
    std::uint64_t rest = w;
    for (int i = n - 1; i >= 0; --i) {
      word[i] = static_cast<int>(rest % static_cast<std::uint64_t>(piles));
      rest /= static_cast<std::uint64_t>(piles);
    }
    add(dist, interleave_word(word, piles), weight);
  }
  return dist;
}

class PhysicalWalker {
 public:
  PhysicalWalker(int n, PhysicalRiffle params, std::uint64_t budget)
      : n_(n), params_(params), budget_(budget), dist_{n, {}} {}

  StepDistribution run() {
    const int half = n_ / 2;
    std::vector<int> cuts;
    for (int c = half - params_.cut_spread; c <= half + params_.cut_spread; ++c) {
      if (c >= 0 && c <= n_) cuts.push_back(c);
    }
    const Rational branch(1, 2 * static_cast<long>(cuts.size()));
    for (int c : cuts) {
      for (int side = 0; side < 2; ++side) {
        std::vector<int> deck;
        deck.reserve(n_);
        walk(1, c + 1, c, side, deck, branch);
      }
    }
    return std::move(dist_);
  }

 private:
  // Top half holds labels [top, cut], bottom half (cut, n].
  void walk(int top, int bottom, int cut, int side, std::vector<int>& deck,
            const Rational& p) {
    const int top_left = cut - top + 1;
    const int bottom_left = n_ - bottom + 1;
    if (top_left == 0 || bottom_left == 0) {
      if (++leaves_ > budget_) {
        throw ResourceLimit("brute-force physical riffle tree for n=" + std::to_string(n_) +
                            " exceeds " + std::to_string(budget_) + " paths");
      }
      const auto mark = deck.size();
      for (int v = top; v <= cut; ++v) deck.push_back(v);
      for (int v = bottom; v <= n_; ++v) deck.push_back(v);
      add(dist_, Arrangement(deck), p);
      deck.resize(mark);
      return;
    }
    const int remaining = side == 0 ? top_left : bottom_left;
    const int choices = std::min(params_.max_packet, remaining);
    const Rational q = p / choices;
    const auto mark = deck.size();
    for (int take = 1; take <= choices; ++take) {
      int first = side == 0 ? top : bottom;
      for (int v = first; v < first + take; ++v) deck.push_back(v);
      if (side == 0) {
        walk(top + take, bottom, cut, 1, deck, q);
      } else {
        walk(top, bottom + take, cut, 0, deck, q);
      }
      deck.resize(mark);
    }
  }

  int n_;
  PhysicalRiffle params_;
  std::uint64_t budget_;
  std::uint64_t leaves_ = 0;
  StepDistribution dist_;
};

}  // namespace

ShuffleModel::ShuffleModel(Kind kind) : kind_(kind) {
  std::visit(Overloaded{
                 [](const GsrRiffle& g) {
                   if (g.packets < 2) {
                     throw InvalidArgument("GSR riffle needs at least 2 packets, got " +
                                           std::to_string(g.packets));
                   }
                 },
                 [](const PhysicalRiffle& p) {
                   if (p.cut_spread < 0) throw InvalidArgument("cut spread must be >= 0");
                   if (p.max_packet < 1) throw InvalidArgument("max packet must be >= 1");
                 },
                 [](const auto&) {},
             },
             kind_);
}

bool ShuffleModel::is_deterministic() const {
  return is<FaroOut>() || is<FaroIn>() || is<Mongean>();
}

std::string ShuffleModel::name() const {
  return std::visit(
      Overloaded{
          [](const TopInAtRandom&) -> std::string { return "top"; },
          [](const GsrRiffle& g) -> std::string {
            return "gsr(a=" + std::to_string(g.packets) + ")";
          },
          [](const PhysicalRiffle& p) -> std::string {
            return "physical(s=" + std::to_string(p.cut_spread) +
                   ",p=" + std::to_string(p.max_packet) + ")";
          },
          [](const FaroOut&) -> std::string { return "faro-out"; },
          [](const FaroIn&) -> std::string { return "faro-in"; },
          [](const Mongean&) -> std::string { return "mongean"; },
          [](const NaiveUniform&) -> std::string { return "naive"; },
      },
      kind_);
}

Rational StepDistribution::total() const {
  Rational sum = 0;
  for (const auto& [r, p] : probs) sum += p;
  return sum;
}

Rational StepDistribution::at(Rank r) const {
  auto it = probs.find(r);
  return it == probs.end() ? Rational(0) : it->second;
}

StepDistribution single_shuffle_distribution(const ShuffleModel& model, int n,
                                             const DeckCap& cap) {
  require_deck(n);
  StepDistribution dist{n, {}};
  if (model.is<TopInAtRandom>()) {
    const Rational each(1, n);
    auto id = Arrangement::identity(n);
    for (int slot = 0; slot < n; ++slot) {
      std::vector<int> labels(id.labels().begin() + 1, id.labels().end());
      labels.insert(labels.begin() + slot, 1);
      add(dist, Arrangement(std::move(labels)), each);
    }
    return dist;
  }
  if (const auto* gsr = std::get_if<GsrRiffle>(&model.kind())) {
    cap.check(n, "GSR step distribution");
    const BigInt a = gsr->packets;
    BigInt a_pow_n;
    mpz_pow_ui(a_pow_n.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(n));
    for (const auto& arr : enumerate(n, cap)) {
      const int r = rising_sequences(arr);
      BigInt count = binomial(a + n - r, static_cast<unsigned long>(n));
      if (count == 0) continue;
      Rational p(count, a_pow_n);
      p.canonicalize();
      dist.probs.emplace(rank(arr), std::move(p));
    }
    return dist;
  }
  if (model.is<NaiveUniform>()) {
    cap.check(n, "uniform step distribution");
    const Rational each(1, factorial(n));
    for (std::uint64_t r = 0; r < factorial(n); ++r) dist.probs.emplace(Rank{r}, each);
    return dist;
  }
  if (model.is<PhysicalRiffle>()) {
    throw InvalidArgument(
        "physical riffle has no closed-form step law; use brute_force_distribution");
  }
  throw InvalidArgument(model.name() +
                        " is deterministic; use deterministic_permutation instead");
}

StepDistribution brute_force_distribution(const ShuffleModel& model, int n,
                                          std::uint64_t path_budget) {
  require_deck(n);
  if (const auto* gsr = std::get_if<GsrRiffle>(&model.kind())) {
    return brute_force_gsr(n, gsr->packets, path_budget);
  }
  if (const auto* phys = std::get_if<PhysicalRiffle>(&model.kind())) {
    return PhysicalWalker(n, *phys, path_budget).run();
  }
  if (model.is<TopInAtRandom>()) {
    return single_shuffle_distribution(model, n);
  }
  if (model.is<NaiveUniform>()) {
    if (factorial(n) > path_budget) {
      throw ResourceLimit("brute-force uniform law for n=" + std::to_string(n) + " exceeds " +
                          std::to_string(path_budget) + " paths");
    }
    StepDistribution dist{n, {}};
    const Rational each(1, factorial(n));
    for (std::uint64_t r = 0; r < factorial(n); ++r) dist.probs.emplace(Rank{r}, each);
    return dist;
  }
  StepDistribution dist{n, {}};
  dist.probs.emplace(rank(deterministic_permutation(model, n)), Rational(1));
  return dist;
}

Arrangement deterministic_permutation(const ShuffleModel& model, int n) {
  if (n < 1) throw InvalidArgument("deck size must be >= 1, got " + std::to_string(n));
  if (!model.is_deterministic()) {
    throw InvalidArgument(model.name() + " is not a deterministic shuffle");
  }
  std::vector<int> labels;
  labels.reserve(n);
  if (model.is<Mongean>()) {
    // Deal from the top: card 1 starts the pile, then even cards go on top
    // and odd cards underneath.
    std::vector<int> above;
    std::vector<int> below;
    for (int card = 2; card <= n; ++card) (card % 2 == 0 ? above : below).push_back(card);
    labels.assign(above.rbegin(), above.rend());
    labels.push_back(1);
    labels.insert(labels.end(), below.begin(), below.end());
    return Arrangement(std::move(labels));
  }
  if (n % 2 != 0) {
    throw InvalidArgument("Faro shuffles need an even deck, got n=" + std::to_string(n));
  }
  const int half = n / 2;
  const bool out = model.is<FaroOut>();
  for (int i = 1; i <= half; ++i) {
    if (out) {
      labels.push_back(i);
      labels.push_back(half + i);
    } else {
      labels.push_back(half + i);
      labels.push_back(i);
    }
  }
  return Arrangement(std::move(labels));
}

std::uint64_t deterministic_period(const ShuffleModel& model, int n) {
  const Arrangement p = deterministic_permutation(model, n);
  std::vector<bool> seen(n, false);
  std::uint64_t period = 1;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::uint64_t length = 0;
    for (int i = start; !seen[i]; i = p.labels()[i] - 1) {
      seen[i] = true;
      ++length;
    }
    const std::uint64_t g = std::gcd(period, length);
    if (period / g > std::numeric_limits<std::uint64_t>::max() / length) {
      throw ResourceLimit("shuffle period overflows 64 bits");
    }
    period = period / g * length;
  }
  return period;
}

std::vector<int> faro_trace(int n, int start_depth, int hands, bool out_shuffle) {
  if (n < 2 || n % 2 != 0) {
    throw InvalidArgument("Faro trace needs an even deck, got n=" + std::to_string(n));
  }
  if (start_depth < 0 || start_depth >= n) {
    throw InvalidArgument("start depth " + std::to_string(start_depth) + " outside 0.." +
                          std::to_string(n - 1));
  }
  if (hands < 0) throw InvalidArgument("hand count must be >= 0");
  const ShuffleModel model = out_shuffle ? ShuffleModel(FaroOut{}) : ShuffleModel(FaroIn{});
  // Card from old position q lands at new position inverse(p)(q).
  const Arrangement destination = inverse(deterministic_permutation(model, n));
  std::vector<int> depths{start_depth};
  depths.reserve(hands + 1);
  int depth = start_depth;
  for (int h = 0; h < hands; ++h) {
    depth = destination.labels()[depth] - 1;
    depths.push_back(depth);
  }
  return depths;
}

Arrangement apply_deterministic(const ShuffleModel& model, const Arrangement& deck) {
  return compose(deck, deterministic_permutation(model, deck.size()));
}

}  // namespace shufflekit
