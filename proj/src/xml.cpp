#include "xml.hpp"

#include <cctype>

namespace owlhorn::xml {
namespace {

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == ':' || c == '-' || c == '.' ||
         static_cast<unsigned char>(c) >= 0x80;
}

// Unknown entities (e.g. &xsd; without a DTD) are kept verbatim.
std::string decode_entities(std::string_view s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    size_t semi = s.find(';', i);
    if (semi == std::string_view::npos) {
      out += s[i];
      continue;
    }
    auto ent = s.substr(i + 1, semi - i - 1);
    if (ent == "lt") {
      out += '<';
    } else if (ent == "gt") {
      out += '>';
    } else if (ent == "amp") {
      out += '&';
    } else if (ent == "quot") {
      out += '"';
    } else if (ent == "apos") {
      out += '\'';
    } else if (ent.size() > 1 && ent[0] == '#') {
      unsigned long code = 0;
      try {
        code = ent[1] == 'x' ? std::stoul(std::string(ent.substr(2)), nullptr, 16)
                             : std::stoul(std::string(ent.substr(1)));
      } catch (...) {
        out.append(s.substr(i, semi - i + 1));
        i = semi;
        continue;
      }
      if (code < 0x80) {
        out += static_cast<char>(code);
      } else if (code < 0x800) {
        out += static_cast<char>(0xc0 | (code >> 6));
        out += static_cast<char>(0x80 | (code & 0x3f));
      } else {
        out += static_cast<char>(0xe0 | (code >> 12));
        out += static_cast<char>(0x80 | ((code >> 6) & 0x3f));
        out += static_cast<char>(0x80 | (code & 0x3f));
      }
    } else {
      out.append(s.substr(i, semi - i + 1));
    }
    i = semi;
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const std::string& file, std::vector<Diagnostic>& diags)
      : text_(text), file_(file), diags_(diags) {}

  Node run() {
    Node doc;
    doc.name = "#document";
    doc.line = 1;
    std::vector<Node*> stack{&doc};
    std::vector<std::string> pending_text{""};

    while (pos_ < text_.size()) {
      if (text_[pos_] != '<') {
        size_t next = text_.find('<', pos_);
        if (next == std::string_view::npos) next = text_.size();
        pending_text.back() += std::string(text_.substr(pos_, next - pos_));
        advance_to(next);
        continue;
      }
      if (starts_with("<!--")) {
        skip_past("-->", "unterminated comment");
      } else if (starts_with("<![CDATA[")) {
        size_t start = pos_ + 9;
        size_t end = text_.find("]]>", start);
        if (end == std::string_view::npos) {
          error("unterminated CDATA section");
          end = text_.size();
        }
        pending_text.back() += std::string(text_.substr(start, end - start));
        advance_to(std::min(end + 3, text_.size()));
      } else if (starts_with("<?")) {
        skip_past("?>", "unterminated processing instruction");
      } else if (starts_with("<!")) {
        skip_declaration();
      } else if (starts_with("</")) {
        int line = line_;
        advance_to(pos_ + 2);
        std::string name = read_name();
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '>') {
          advance_to(pos_ + 1);
        } else {
          error_at(line, "malformed end tag </" + name + ">");
        }
        close(stack, pending_text, name, line);
      } else {
        Node node;
        node.line = line_;
        advance_to(pos_ + 1);
        node.name = read_name();
        if (node.name.empty()) {
          error("malformed start tag");
          advance_to(pos_ + 1);
          continue;
        }
        bool closed = read_attributes(node);
        if (closed) {
          node.self_closed = true;
          stack.back()->children.push_back(std::move(node));
        } else {
          stack.back()->children.push_back(std::move(node));
          stack.push_back(&stack.back()->children.back());
          pending_text.emplace_back();
        }
      }
    }
    while (stack.size() > 1) {
      error_at(stack.back()->line, "element <" + stack.back()->name + "> is never closed");
      stack.back()->text = trim(decode_entities(pending_text.back()));
      stack.pop_back();
      pending_text.pop_back();
    }
    return doc;
  }

 private:
  void close(std::vector<Node*>& stack, std::vector<std::string>& pending_text, const std::string& name, int line) {
    if (stack.size() > 1 && stack.back()->name == name) {
      stack.back()->text = trim(decode_entities(pending_text.back()));
      stack.pop_back();
      pending_text.pop_back();
      return;
    }
    // Repair `<a/> siblings... </a>`.
    auto& siblings = stack.back()->children;
    for (size_t i = siblings.size(); i-- > 0;) {
      if (siblings[i].name == name && siblings[i].self_closed) {
        Node& wrapper = siblings[i];
        for (size_t j = i + 1; j < siblings.size(); ++j) wrapper.children.push_back(std::move(siblings[j]));
        siblings.erase(siblings.begin() + static_cast<long>(i) + 1, siblings.end());
        wrapper.self_closed = false;
        warn_at(line, "stray </" + name + "> after self-closed <" + name + "/>; treating following siblings as its children");
        return;
      }
    }
    for (size_t depth = stack.size(); depth-- > 1;) {
      if (stack[depth]->name == name) {
        error_at(line, "mismatched end tag </" + name + ">, expected </" + stack.back()->name + ">");
        while (stack.size() > depth) {
          stack.back()->text = trim(decode_entities(pending_text.back()));
          stack.pop_back();
          pending_text.pop_back();
        }
        return;
      }
    }
    error_at(line, "unexpected end tag </" + name + ">");
  }

  bool read_attributes(Node& node) {
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        error_at(node.line, "unterminated start tag <" + node.name + ">");
        return true;
      }
      if (starts_with("/>")) {
        advance_to(pos_ + 2);
        return true;
      }
      if (text_[pos_] == '>') {
        advance_to(pos_ + 1);
        return false;
      }
      std::string attr = read_name();
      if (attr.empty()) {
        error("malformed attribute in <" + node.name + ">");
        advance_to(pos_ + 1);
        continue;
      }
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != '=') {
        error("attribute '" + attr + "' has no value");
        continue;
      }
      advance_to(pos_ + 1);
      skip_space();
      if (pos_ >= text_.size() || (text_[pos_] != '"' && text_[pos_] != '\'')) {
        error("attribute '" + attr + "' value must be quoted");
        continue;
      }
      char quote = text_[pos_];
      size_t end = text_.find(quote, pos_ + 1);
      if (end == std::string_view::npos) {
        error("unterminated attribute value");
        advance_to(text_.size());
        return true;
      }
      node.attributes.emplace_back(attr, decode_entities(text_.substr(pos_ + 1, end - pos_ - 1)));
      advance_to(end + 1);
    }
  }

  void skip_declaration() {
    // <!DOCTYPE ... [ ... ]> with a possible internal subset.
    int depth = 0;
    int line = line_;
    for (size_t i = pos_ + 2; i < text_.size(); ++i) {
      if (text_[i] == '[') ++depth;
      if (text_[i] == ']') --depth;
      if (text_[i] == '>' && depth <= 0) {
        advance_to(i + 1);
        return;
      }
    }
    error_at(line, "unterminated declaration");
    advance_to(text_.size());
  }

  std::string read_name() {
    size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance_to(pos_ + 1);
  }

  void skip_past(std::string_view terminator, const std::string& message) {
    int line = line_;
    size_t end = text_.find(terminator, pos_);
    if (end == std::string_view::npos) {
      error_at(line, message);
      advance_to(text_.size());
      return;
    }
    advance_to(end + terminator.size());
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void advance_to(size_t target) {
    for (; pos_ < target && pos_ < text_.size(); ++pos_) {
      if (text_[pos_] == '\n') ++line_;
    }
    pos_ = target;
  }

  void error(const std::string& msg) { error_at(line_, msg); }
  void error_at(int line, const std::string& msg) {
    diags_.push_back(Diagnostic{Severity::Error, DiagnosticKind::Syntax, {file_, line}, msg});
  }
  void warn_at(int line, const std::string& msg) {
    diags_.push_back(Diagnostic{Severity::Warning, DiagnosticKind::Syntax, {file_, line}, msg});
  }

  std::string_view text_;
  std::string file_;
  std::vector<Diagnostic>& diags_;
  size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

std::optional<std::string> Node::attribute(std::string_view qname) const {
  for (const auto& [k, v] : attributes) {
    if (k == qname) return v;
  }
  return std::nullopt;
}

std::optional<std::string> Node::attribute_local(std::string_view local) const {
  for (const auto& [k, v] : attributes) {
    auto colon = k.find(':');
    std::string_view l = colon == std::string::npos ? std::string_view(k) : std::string_view(k).substr(colon + 1);
    if (l == local) return v;
  }
  return std::nullopt;
}

std::string_view Node::local_name() const {
  auto colon = name.find(':');
  return colon == std::string::npos ? std::string_view(name) : std::string_view(name).substr(colon + 1);
}

std::string_view Node::prefix() const {
  auto colon = name.find(':');
  return colon == std::string::npos ? std::string_view() : std::string_view(name).substr(0, colon);
}

Node parse(std::string_view text, const std::string& file, std::vector<Diagnostic>& diags) {
  return Parser(text, file, diags).run();
}

}  // namespace owlhorn::xml
