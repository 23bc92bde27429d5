#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace monocone {

// Observers of the tripartite system. A is the most significant qubit of the
// basis index: |abc> <-> 4a + 2b + c.
enum class Party : int { A = 0, B = 1, C = 2 };

inline constexpr std::array<Party, 3> kParties{Party::A, Party::B, Party::C};

constexpr char party_label(Party p) {
  switch (p) {
    case Party::A: return 'A';
    case Party::B: return 'B';
    case Party::C: return 'C';
  }
  return '?';
}

inline Party party_from_label(char c) {
  switch (c) {
    case 'A': case 'a': return Party::A;
    case 'B': case 'b': return Party::B;
    case 'C': case 'c': return Party::C;
    default: throw std::invalid_argument("party label must be one of A, B, C");
  }
}

// The two non-nodal parties, in A < B < C order.
constexpr std::array<Party, 2> partners_of(Party node) {
  switch (node) {
    case Party::A: return {Party::B, Party::C};
    case Party::B: return {Party::A, Party::C};
    case Party::C: return {Party::A, Party::B};
  }
  return {Party::B, Party::C};
}

/// Subset of {A, B, C}, kept as a three-bit mask.
class PartySet {
 public:
  constexpr PartySet() = default;
  constexpr PartySet(std::initializer_list<Party> parties) {
    for (Party p : parties) bits_ = static_cast<uint8_t>(bits_ | mask(p));
  }

  static constexpr PartySet all() { return {Party::A, Party::B, Party::C}; }

  constexpr bool contains(Party p) const { return (bits_ & mask(p)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }

  constexpr int size() const {
    int n = 0;
    for (Party p : kParties) n += contains(p) ? 1 : 0;
    return n;
  }

  constexpr PartySet complement() const {
    PartySet s;
    s.bits_ = static_cast<uint8_t>(~bits_ & 0x7u);
    return s;
  }

  // Members in A < B < C order.
  std::vector<Party> members() const {
    std::vector<Party> m;
    for (Party p : kParties)
      if (contains(p)) m.push_back(p);
    return m;
  }

  friend constexpr bool operator==(PartySet lhs, PartySet rhs) { return lhs.bits_ == rhs.bits_; }

 private:
  static constexpr uint8_t mask(Party p) { return static_cast<uint8_t>(1u << static_cast<int>(p)); }
  uint8_t bits_ = 0;
};

}  // namespace monocone
