#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace fota {

// Dense membership set over the universe 0..universe()-1. Used for state
// sets in acceptance conditions and for symbol sets when the distance
// functions are evaluated over letters.
class IdSet {
 public:
  IdSet() = default;
  explicit IdSet(std::size_t universe) : bits_(universe, false) {}
  IdSet(std::size_t universe, std::initializer_list<std::uint32_t> ids)
      : bits_(universe, false) {
    for (auto id : ids) insert(id);
  }
  IdSet(std::size_t universe, const std::vector<std::uint32_t>& ids)
      : bits_(universe, false) {
    for (auto id : ids) insert(id);
  }

  static IdSet full(std::size_t universe) {
    IdSet s;
    s.bits_.assign(universe, true);
    return s;
  }

  std::size_t universe() const noexcept { return bits_.size(); }

  bool contains(std::uint32_t id) const noexcept {
    return id < bits_.size() && bits_[id];
  }

  // Grows the universe when id is out of range.
  void insert(std::uint32_t id) {
    if (id >= bits_.size()) bits_.resize(id + 1, false);
    bits_[id] = true;
  }

  void erase(std::uint32_t id) noexcept {
    if (id < bits_.size()) bits_[id] = false;
  }

  void resize(std::size_t universe) { bits_.resize(universe, false); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (bool b : bits_) n += b ? 1 : 0;
    return n;
  }

  bool empty() const noexcept { return count() == 0; }

  std::vector<std::uint32_t> members() const {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) out.push_back(static_cast<std::uint32_t>(i));
    return out;
  }

  // Equality ignores trailing universe padding.
  friend bool operator==(const IdSet& a, const IdSet& b) {
    const std::size_t n = std::max(a.universe(), b.universe());
    for (std::size_t i = 0; i < n; ++i)
      if (a.contains(static_cast<std::uint32_t>(i)) !=
          b.contains(static_cast<std::uint32_t>(i)))
        return false;
    return true;
  }

 private:
  std::vector<bool> bits_;
};

}  // namespace fota
