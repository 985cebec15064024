#include "owlhorn/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace owlhorn {
namespace {

struct SymbolTable {
  std::shared_mutex mutex;
  std::deque<std::string> names{std::string()};  // id 0 is the invalid symbol
  std::unordered_map<std::string_view, uint32_t> ids;

  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }
};

}  // namespace

Symbol Symbol::intern(std::string_view text) {
  auto& table = SymbolTable::instance();
  {
    std::shared_lock lock(table.mutex);
    auto it = table.ids.find(text);
    if (it != table.ids.end()) return Symbol(it->second);
  }
  std::unique_lock lock(table.mutex);
  auto it = table.ids.find(text);
  if (it != table.ids.end()) return Symbol(it->second);
  auto id = static_cast<uint32_t>(table.names.size());
  table.names.emplace_back(text);
  table.ids.emplace(table.names.back(), id);
  return Symbol(id);
}

Symbol Symbol::find(std::string_view text) {
  auto& table = SymbolTable::instance();
  std::shared_lock lock(table.mutex);
  auto it = table.ids.find(text);
  return it == table.ids.end() ? Symbol() : Symbol(it->second);
}

std::string_view Symbol::str() const {
  auto& table = SymbolTable::instance();
  std::shared_lock lock(table.mutex);
  return table.names[id_];
}

}  // namespace owlhorn
