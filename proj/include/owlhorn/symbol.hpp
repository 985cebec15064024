#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace owlhorn {

// Interned string. Ids are process-wide and stable; ordering by id reflects
// interning order, so anything that must be deterministic across runs sorts
// by str() instead.
class Symbol {
 public:
  Symbol() = default;

  static Symbol intern(std::string_view text);
  // Returns an invalid Symbol when `text` was never interned.
  static Symbol find(std::string_view text);

  std::string_view str() const;
  uint32_t id() const { return id_; }
  bool valid() const { return id_ != 0; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }

 private:
  explicit Symbol(uint32_t id) : id_(id) {}
  uint32_t id_ = 0;
};

}  // namespace owlhorn

template <>
struct std::hash<owlhorn::Symbol> {
  size_t operator()(owlhorn::Symbol s) const noexcept { return std::hash<uint32_t>()(s.id()); }
};
