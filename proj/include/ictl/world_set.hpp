// Fixed-universe bit set of world indices.

#ifndef ICTL_WORLD_SET_HPP
#define ICTL_WORLD_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace ictl {

using WorldIndex = std::size_t;

class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}
  WorldSet(std::size_t universe, std::initializer_list<WorldIndex> members)
      : WorldSet(universe) {
    for (auto w : members) insert(w);
  }

  static WorldSet full(std::size_t universe) {
    WorldSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(WorldIndex w) const noexcept {
    return w < universe_ && ((words_[w / 64] >> (w % 64)) & 1U);
  }
  void insert(WorldIndex w) {
    check(w);
    words_[w / 64] |= std::uint64_t{1} << (w % 64);
  }
  void erase(WorldIndex w) {
    check(w);
    words_[w / 64] &= ~(std::uint64_t{1} << (w % 64));
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool is_full() const noexcept { return count() == universe_; }

  bool subset_of(const WorldSet& other) const {
    same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  bool intersects(const WorldSet& other) const {
    same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  WorldSet& operator&=(const WorldSet& other) {
    same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  WorldSet& operator|=(const WorldSet& other) {
    same_universe(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }

  WorldSet complemented() const {
    WorldSet s = *this;
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
  }

  std::vector<WorldIndex> members() const {
    std::vector<WorldIndex> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto bits = words_[i];
      while (bits) {
        out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  /// Smallest member, or universe() when empty.
  WorldIndex first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i])
        return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return universe_;
  }

  friend bool operator==(const WorldSet&, const WorldSet&) = default;

  /// Lexicographic order on the underlying words; used for canonical sorting.
  friend bool operator<(const WorldSet& a, const WorldSet& b) {
    if (a.universe_ != b.universe_) return a.universe_ < b.universe_;
    return a.words_ < b.words_;
  }

 private:
  void check(WorldIndex w) const {
    if (w >= universe_) throw std::out_of_range("world index out of range");
  }
  void same_universe(const WorldSet& other) const {
    if (other.universe_ != universe_)
      throw std::invalid_argument("world sets over different universes");
  }
  void trim() {
    if (universe_ % 64 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// One row per world: row[w] is the set of worlds related to w.
using Relation = std::vector<WorldSet>;

}  // namespace ictl

#endif  // ICTL_WORLD_SET_HPP
