#include "shufflekit/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "shufflekit/errors.hpp"

namespace shufflekit {

Arrangement::Arrangement(std::vector<int> labels) : labels_(std::move(labels)) {
  const int n = size();
  if (n < 1) throw InvalidArgument("arrangement must hold at least one card");
  std::vector<bool> seen(n + 1, false);
  for (int label : labels_) {
    if (label < 1 || label > n || seen[label]) {
      throw InvalidArgument("arrangement labels must be a permutation of 1.." +
                            std::to_string(n));
    }
    seen[label] = true;
  }
}

Arrangement Arrangement::identity(int n) {
  if (n < 1) throw InvalidArgument("deck size must be >= 1, got " + std::to_string(n));
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 1);
  return Arrangement(std::move(labels), Unchecked{});
}

int Arrangement::at(int position) const {
  if (position < 1 || position > size()) {
    throw InvalidArgument("position " + std::to_string(position) + " outside 1.." +
                          std::to_string(size()));
  }
  return labels_[position - 1];
}

int Arrangement::position_of(int label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw InvalidArgument("label " + std::to_string(label) + " not in deck");
  }
  return static_cast<int>(it - labels_.begin()) + 1;
}

std::string Arrangement::to_string() const {
  std::ostringstream out;
  const bool compact = size() <= 9;
  for (int i = 0; i < size(); ++i) {
    if (!compact && i > 0) out << ',';
    out << labels_[i];
  }
  return out.str();
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > kMaxRankableN) {
    throw InvalidArgument(std::to_string(n) + "! does not fit in 64 bits");
  }
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Rank rank(const Arrangement& a) {
  const int n = a.size();
  if (n > kMaxRankableN) {
    throw InvalidArgument("cannot rank decks larger than " + std::to_string(kMaxRankableN));
  }
  auto labels = a.labels();
  std::uint64_t value = 0;
  // Lehmer digit i counts smaller labels to the right of position i.
  for (int i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (int j = i + 1; j < n; ++j) {
      if (labels[j] < labels[i]) ++smaller;
    }
    value = value * static_cast<std::uint64_t>(n - i) + smaller;
  }
  return Rank{value};
}

Arrangement unrank(int n, Rank r) {
  if (n < 1) throw InvalidArgument("deck size must be >= 1, got " + std::to_string(n));
  const std::uint64_t total = factorial(n);
  if (r.value >= total) {
    throw InvalidArgument("rank " + std::to_string(r.value) + " out of range for n=" +
                          std::to_string(n) + " (n! = " + std::to_string(total) + ")");
  }
  std::vector<int> digits(n);
  std::uint64_t rest = r.value;
  for (int i = n - 1; i >= 0; --i) {
    const auto base = static_cast<std::uint64_t>(n - i);
    digits[i] = static_cast<int>(rest % base);
    rest /= base;
  }
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<int> labels;
  labels.reserve(n);
  for (int d : digits) {
    labels.push_back(pool[d]);
    pool.erase(pool.begin() + d);
  }
  return Arrangement(std::move(labels), Arrangement::Unchecked{});
}

Arrangement compose(const Arrangement& f, const Arrangement& g) {
  if (f.size() != g.size()) {
    throw InvalidArgument("compose: deck sizes differ (" + std::to_string(f.size()) +
                          " vs " + std::to_string(g.size()) + ")");
  }
  std::vector<int> labels(g.size());
  for (int i = 0; i < g.size(); ++i) labels[i] = f.labels_[g.labels_[i] - 1];
  return Arrangement(std::move(labels), Arrangement::Unchecked{});
}

Arrangement inverse(const Arrangement& a) {
  std::vector<int> labels(a.size());
  for (int i = 0; i < a.size(); ++i) labels[a.labels_[i] - 1] = i + 1;
  return Arrangement(std::move(labels), Arrangement::Unchecked{});
}

int rising_sequences(const Arrangement& a) {
  const int n = a.size();
  std::vector<int> pos(n + 1);
  for (int i = 0; i < n; ++i) pos[a.labels()[i]] = i;
  int r = 1;
  for (int v = 1; v < n; ++v) {
    if (pos[v + 1] < pos[v]) ++r;
  }
  return r;
}

Arrangement parse_arrangement(const std::string& text) {
  std::vector<int> labels;
  if (text.find(',') == std::string::npos) {
    for (char c : text) {
      if (c < '1' || c > '9') throw InvalidArgument("bad arrangement '" + text + "'");
      labels.push_back(c - '0');
    }
  } else {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        labels.push_back(std::stoi(item, &used));
        if (used != item.size()) throw InvalidArgument("");
      } catch (const std::exception&) {
        throw InvalidArgument("bad arrangement '" + text + "'");
      }
    }
  }
  return Arrangement(std::move(labels));
}

DeckCap DeckCap::with_override(int max_n) {
  if (max_n < 1 || max_n > kOverrideLimit) {
    throw InvalidArgument("deck cap override must be in 1.." +
                          std::to_string(kOverrideLimit) + ", got " +
                          std::to_string(max_n));
  }
  return DeckCap(max_n);
}

void DeckCap::check(int n, const char* what) const {
  if (n > max_n_) {
    throw ResourceLimit(std::string(what) + " for n=" + std::to_string(n) +
                        " exceeds the deck-size limit n <= " + std::to_string(max_n_) +
                        " (may be raised up to " +
                        std::to_string(kOverrideLimit) + ")");
  }
}

std::vector<Arrangement> enumerate(int n, const DeckCap& cap) {
  if (n < 1) throw InvalidArgument("deck size must be >= 1, got " + std::to_string(n));
  cap.check(n, "enumerating all arrangements");
  Arrangement current = Arrangement::identity(n);
  std::vector<int> labels(current.labels().begin(), current.labels().end());
  std::vector<Arrangement> out;
  out.reserve(factorial(n));
  do {
    out.emplace_back(labels);
  } while (std::next_permutation(labels.begin(), labels.end()));
  return out;
}

}  // namespace shufflekit
