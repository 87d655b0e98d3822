#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eipflow::xml {

class XmlError : public std::runtime_error {
public:
    XmlError(const std::string& what, int line, int col)
        : std::runtime_error(what + " at " + std::to_string(line) + ":" + std::to_string(col)),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

struct Element {
    std::string name; // as written, prefix included
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<Element> children;
    std::string text; // trimmed character data
    int line = 0;
    int col = 0;

    std::string local_name() const {
        auto pos = name.find(':');
        return pos == std::string::npos ? name : name.substr(pos + 1);
    }
    std::string prefix() const {
        auto pos = name.find(':');
        return pos == std::string::npos ? std::string{} : name.substr(0, pos);
    }

    // Attribute lookup by local name (prefix ignored).
    const std::string* attr(const std::string& local) const;
    // Attribute lookup by exact written name.
    const std::string* attr_exact(const std::string& written) const;

    const Element* child(const std::string& local) const;
    std::vector<const Element*> children_named(const std::string& local) const;

    std::size_t subtree_size() const; // element count including self
};

// Parses one well-formed document; throws XmlError with position info.
Element parse(std::string_view bytes);

// Canonical writer: 2-space indent, attributes in stored order, entities
// escaped so attribute values survive byte-exactly (newlines included).
std::string serialize(const Element& root);
void write_element(std::string& out, const Element& el, int depth);

std::string escape_text(const std::string& text);
std::string escape_attr(const std::string& text);

} // namespace eipflow::xml
