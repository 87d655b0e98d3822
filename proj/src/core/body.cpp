#include "eipflow/body.hpp"

#include <stdexcept>

namespace eipflow {

bool BodyNode::operator==(const BodyNode& other) const {
    return name == other.name && value == other.value && children == other.children;
}

BodyPath parse_body_path(const std::string& text) {
    if (text.empty() || text[0] != '/')
        throw std::invalid_argument("body path must start with '/': " + text);
    BodyPath path;
    std::size_t pos = 1;
    while (pos <= text.size()) {
        std::size_t next = text.find('/', pos);
        std::string seg = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (seg.empty())
            throw std::invalid_argument("empty segment in body path: " + text);
        PathSegment out;
        auto bracket = seg.find('[');
        if (bracket != std::string::npos) {
            if (seg.back() != ']')
                throw std::invalid_argument("unterminated index in body path: " + text);
            std::string idx = seg.substr(bracket + 1, seg.size() - bracket - 2);
            try {
                out.index = std::stoi(idx);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad index in body path: " + text);
            }
            if (out.index < 1)
                throw std::invalid_argument("body path indices are 1-based: " + text);
            out.name = seg.substr(0, bracket);
        } else {
            out.name = seg;
        }
        if (out.name.empty())
            throw std::invalid_argument("empty name in body path: " + text);
        path.push_back(std::move(out));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (path.empty())
        throw std::invalid_argument("empty body path");
    return path;
}

std::string body_path_to_string(const BodyPath& path) {
    std::string out;
    for (const auto& seg : path) {
        out += '/';
        out += seg.name;
        if (seg.index != 1) {
            out += '[';
            out += std::to_string(seg.index);
            out += ']';
        }
    }
    return out.empty() ? "/" : out;
}

namespace {

template <typename Node>
Node* find_child(std::vector<Node>& nodes, const PathSegment& seg) {
    int seen = 0;
    for (auto& n : nodes) {
        if (n.name == seg.name && ++seen == seg.index) return &n;
    }
    return nullptr;
}

} // namespace

BodyNode* BodyTree::find(const BodyPath& path) {
    if (path.empty()) return nullptr;
    std::vector<BodyNode>* level = &roots;
    BodyNode* node = nullptr;
    for (const auto& seg : path) {
        node = find_child(*level, seg);
        if (!node) return nullptr;
        level = &node->children;
    }
    return node;
}

const BodyNode* BodyTree::find(const BodyPath& path) const {
    return const_cast<BodyTree*>(this)->find(path);
}

const BodyNode* BodyTree::find(const std::string& path) const {
    return find(parse_body_path(path));
}

BodyNode* BodyTree::find(const std::string& path) { return find(parse_body_path(path)); }

std::size_t BodyTree::count_at(const BodyPath& parent, const std::string& name) const {
    const std::vector<BodyNode>* level = resolve_children(*this, parent);
    if (!level) return 0;
    std::size_t n = 0;
    for (const auto& child : *level)
        if (child.name == name) ++n;
    return n;
}

const std::vector<BodyNode>* resolve_children(const BodyTree& tree, const BodyPath& path) {
    return resolve_children(const_cast<BodyTree&>(tree), path);
}

std::vector<BodyNode>* resolve_children(BodyTree& tree, const BodyPath& path) {
    std::vector<BodyNode>* level = &tree.roots;
    for (const auto& seg : path) {
        BodyNode* node = find_child(*level, seg);
        if (!node || node->is_leaf()) return nullptr;
        level = &node->children;
    }
    return level;
}

namespace {

// Copies the nodes under `src` that lie on any of the suffix paths; suffixes
// are grouped per matched child.
void project_level(const std::vector<BodyNode>& src, const std::vector<BodyPath>& paths,
                   std::vector<BodyNode>& out) {
    // Walk the source level in order; a child is kept when some path selects
    // it, either exactly (copy whole sub-tree) or as a prefix (recurse).
    std::vector<int> seen_count; // per distinct name position, running index
    std::vector<std::pair<std::string, int>> occurrence; // name -> count so far
    for (const auto& child : src) {
        int idx = 0;
        for (auto& [name, cnt] : occurrence) {
            if (name == child.name) { idx = ++cnt; break; }
        }
        if (idx == 0) {
            occurrence.emplace_back(child.name, 1);
            idx = 1;
        }
        bool keep_whole = false;
        std::vector<BodyPath> suffixes;
        for (const auto& p : paths) {
            if (p.empty()) continue;
            if (p.front().name != child.name || p.front().index != idx) continue;
            if (p.size() == 1) {
                keep_whole = true;
            } else {
                suffixes.emplace_back(p.begin() + 1, p.end());
            }
        }
        if (keep_whole) {
            out.push_back(child);
        } else if (!suffixes.empty()) {
            BodyNode kept;
            kept.name = child.name;
            if (child.is_leaf()) continue; // suffix cannot resolve through a leaf
            project_level(child.children, suffixes, kept.children);
            if (!kept.children.empty()) out.push_back(std::move(kept));
        }
    }
}

} // namespace

BodyTree project_body(const BodyTree& tree, const std::vector<BodyPath>& keep) {
    BodyTree out;
    project_level(tree.roots, keep, out.roots);
    return out;
}

namespace {

BodyNode flatten_node(const BodyNode& node) {
    if (node.is_leaf()) return node;
    if (node.children.size() == 1) {
        // splice the single child up, keeping the outer name
        BodyNode inner = flatten_node(node.children.front());
        inner.name = node.name;
        return inner;
    }
    BodyNode out;
    out.name = node.name;
    out.children.reserve(node.children.size());
    for (const auto& c : node.children) out.children.push_back(flatten_node(c));
    return out;
}

} // namespace

BodyTree flatten_single_chains(const BodyTree& tree) {
    BodyTree out;
    out.roots.reserve(tree.roots.size());
    for (const auto& r : tree.roots) out.roots.push_back(flatten_node(r));
    return out;
}

} // namespace eipflow
