#include "xml.hpp"

#include <cctype>

namespace eipflow::xml {

const std::string* Element::attr(const std::string& local) const {
    for (const auto& [k, v] : attrs) {
        auto pos = k.find(':');
        std::string kl = pos == std::string::npos ? k : k.substr(pos + 1);
        if (kl == local) return &v;
    }
    return nullptr;
}

const std::string* Element::attr_exact(const std::string& written) const {
    for (const auto& [k, v] : attrs)
        if (k == written) return &v;
    return nullptr;
}

const Element* Element::child(const std::string& local) const {
    for (const auto& c : children)
        if (c.local_name() == local) return &c;
    return nullptr;
}

std::vector<const Element*> Element::children_named(const std::string& local) const {
    std::vector<const Element*> out;
    for (const auto& c : children)
        if (c.local_name() == local) out.push_back(&c);
    return out;
}

std::size_t Element::subtree_size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.subtree_size();
    return n;
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view src) : src_(src) {}

    Element parse_document() {
        skip_prolog();
        Element root = parse_element();
        skip_misc();
        if (pos_ != src_.size()) fail("trailing content after document element");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw XmlError(what, line_, col_); }

    bool eof() const { return pos_ >= src_.size(); }

    char peek() const { return src_[pos_]; }

    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    void expect(std::string_view s) {
        if (!starts_with(s)) fail("expected '" + std::string(s) + "'");
        for (std::size_t i = 0; i < s.size(); ++i) take();
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) take();
    }

    void skip_until(std::string_view end) {
        while (!eof() && !starts_with(end)) take();
        if (eof()) fail("unterminated construct, expected '" + std::string(end) + "'");
        expect(end);
    }

    void skip_prolog() {
        for (;;) {
            skip_ws();
            if (starts_with("<?")) {
                skip_until("?>");
            } else if (starts_with("<!--")) {
                skip_until("-->");
            } else if (starts_with("<!DOCTYPE")) {
                skip_doctype();
            } else {
                break;
            }
        }
        if (eof() || peek() != '<') fail("expected document element");
    }

    void skip_doctype() {
        int depth = 0;
        while (!eof()) {
            char c = take();
            if (c == '<') ++depth;
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == '>') {
                if (depth == 0) return;
                --depth;
            }
        }
        fail("unterminated DOCTYPE");
    }

    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<!--")) {
                skip_until("-->");
            } else if (starts_with("<?")) {
                skip_until("?>");
            } else {
                break;
            }
        }
    }

    std::string read_name() {
        std::size_t start = pos_;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' || c == '-' ||
                c == '.') {
                take();
            } else {
                break;
            }
        }
        if (pos_ == start) fail("expected a name");
        return std::string(src_.substr(start, pos_ - start));
    }

    std::pair<std::string, std::string> parse_attr() {
        std::string name = read_name();
        skip_ws();
        expect("=");
        skip_ws();
        if (eof() || (peek() != '"' && peek() != '\'')) fail("attribute value must be quoted");
        char quote = take();
        std::size_t start = pos_;
        while (!eof() && peek() != quote) {
            if (peek() == '<') fail("'<' in attribute value");
            take();
        }
        if (eof()) fail("unterminated attribute value");
        std::string value = decode_raw(src_.substr(start, pos_ - start));
        take(); // closing quote
        return {std::move(name), std::move(value)};
    }

    // decode entities without position bookkeeping (span already consumed)
    std::string decode_raw(std::string_view raw) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out += raw[i];
                continue;
            }
            auto end = raw.find(';', i);
            if (end == std::string_view::npos) fail("unterminated entity reference");
            std::string_view ent = raw.substr(i + 1, end - i - 1);
            if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "amp") out += '&';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else if (!ent.empty() && ent[0] == '#') {
                out += decode_charref(ent);
            } else {
                fail("unknown entity &" + std::string(ent) + ";");
            }
            i = end;
        }
        return out;
    }

    std::string decode_charref(std::string_view ent) {
        int base = 10;
        std::string_view digits = ent.substr(1);
        if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
            base = 16;
            digits = digits.substr(1);
        }
        if (digits.empty()) fail("bad character reference");
        long code = 0;
        for (char d : digits) {
            int v;
            if (d >= '0' && d <= '9') v = d - '0';
            else if (base == 16 && d >= 'a' && d <= 'f') v = d - 'a' + 10;
            else if (base == 16 && d >= 'A' && d <= 'F') v = d - 'A' + 10;
            else { fail("bad character reference"); }
            code = code * base + v;
        }
        std::string out;
        if (code < 0x80) {
            out += static_cast<char>(code);
        } else if (code < 0x800) {
            out += static_cast<char>(0xC0 | (code >> 6));
            out += static_cast<char>(0x80 | (code & 0x3F));
        } else {
            out += static_cast<char>(0xE0 | (code >> 12));
            out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (code & 0x3F));
        }
        return out;
    }

    Element parse_element() {
        Element el;
        el.line = line_;
        el.col = col_;
        expect("<");
        el.name = read_name();
        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag");
            if (starts_with("/>")) {
                expect("/>");
                return el;
            }
            if (peek() == '>') {
                take();
                break;
            }
            el.attrs.push_back(parse_attr());
        }
        // content
        std::string text;
        for (;;) {
            if (eof()) fail("unterminated element <" + el.name + ">");
            if (starts_with("</")) {
                expect("</");
                std::string close = read_name();
                if (close != el.name)
                    fail("mismatched close tag </" + close + "> for <" + el.name + ">");
                skip_ws();
                expect(">");
                break;
            }
            if (starts_with("<!--")) {
                skip_until("-->");
                continue;
            }
            if (starts_with("<![CDATA[")) {
                expect("<![CDATA[");
                std::size_t start = pos_;
                while (!eof() && !starts_with("]]>")) take();
                if (eof()) fail("unterminated CDATA");
                text.append(src_.substr(start, pos_ - start));
                expect("]]>");
                continue;
            }
            if (starts_with("<?")) {
                skip_until("?>");
                continue;
            }
            if (peek() == '<') {
                el.children.push_back(parse_element());
                continue;
            }
            std::size_t start = pos_;
            while (!eof() && peek() != '<') take();
            text += decode_raw(src_.substr(start, pos_ - start));
        }
        // trim surrounding whitespace; interleaved text in mixed content is
        // not meaningful for the BPMN subset
        std::size_t b = text.find_first_not_of(" \t\r\n");
        std::size_t e = text.find_last_not_of(" \t\r\n");
        el.text = b == std::string::npos ? std::string{} : text.substr(b, e - b + 1);
        return el;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

} // namespace

Element parse(std::string_view bytes) { return Reader(bytes).parse_document(); }

std::string escape_text(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string escape_attr(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "&#10;"; break;
            case '\r': out += "&#13;"; break;
            case '\t': out += "&#9;"; break;
            default: out += c;
        }
    }
    return out;
}

void write_element(std::string& out, const Element& el, int depth) {
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    out += indent;
    out += '<';
    out += el.name;
    for (const auto& [k, v] : el.attrs) {
        out += ' ';
        out += k;
        out += "=\"";
        out += escape_attr(v);
        out += '"';
    }
    if (el.children.empty() && el.text.empty()) {
        out += "/>\n";
        return;
    }
    out += '>';
    if (el.children.empty()) {
        out += escape_text(el.text);
        out += "</";
        out += el.name;
        out += ">\n";
        return;
    }
    out += '\n';
    if (!el.text.empty()) {
        out += std::string(static_cast<std::size_t>(depth + 1) * 2, ' ');
        out += escape_text(el.text);
        out += '\n';
    }
    for (const auto& c : el.children) write_element(out, c, depth + 1);
    out += indent;
    out += "</";
    out += el.name;
    out += ">\n";
}

std::string serialize(const Element& root) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    write_element(out, root, 0);
    return out;
}

} // namespace eipflow::xml
