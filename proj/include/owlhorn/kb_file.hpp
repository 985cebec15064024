#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "owlhorn/knowledge_base.hpp"

namespace owlhorn {

inline constexpr std::string_view kKbFormat = "owlhorn-kb";
inline constexpr int kKbVersion = 1;

// JSON with sorted keys and text-sorted fact lists, so equal knowledge bases
// give identical bytes.
std::string serialize_kb(const KnowledgeBase& kb);
// Throws KbFormatError.
std::unique_ptr<KnowledgeBase> deserialize_kb(std::string_view text, MaterializeOptions options = {});

// Writes to a temporary file in the same directory, then renames it over
// `path`, so readers never see a partial file.
void save_kb(const KnowledgeBase& kb, const std::string& path);
// Throws KbFormatError, or std::runtime_error when unreadable.
std::unique_ptr<KnowledgeBase> load_kb(const std::string& path, MaterializeOptions options = {});

// Advisory flock on `<path>.lock`, held for the object's lifetime.
class KbLock {
 public:
  KbLock(const std::string& path, bool exclusive);
  ~KbLock();
  KbLock(const KbLock&) = delete;
  KbLock& operator=(const KbLock&) = delete;

 private:
  int fd_ = -1;
};

// Program parts of the file format, shared with tests.
std::string serialize_program(const Program& program);
Program deserialize_program(std::string_view text);

// Parses `or(a, or(b, c))` text.
Disjunction parse_disjunction(std::string_view text);

}  // namespace owlhorn
