#pragma once

#include "eipflow/scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eipflow {

// One node of a message body. A node is either a leaf carrying a scalar or
// an interior node with ordered, possibly repeating, named children.
struct BodyNode {
    std::string name;
    std::optional<Scalar> value;
    std::vector<BodyNode> children;

    BodyNode() = default;
    BodyNode(std::string n, Scalar v) : name(std::move(n)), value(std::move(v)) {}
    BodyNode(std::string n, std::vector<BodyNode> c)
        : name(std::move(n)), children(std::move(c)) {}

    bool is_leaf() const { return value.has_value(); }

    bool operator==(const BodyNode& other) const;
    bool operator!=(const BodyNode& other) const { return !(*this == other); }
};

// Slash-separated path segment with a 1-based repetition index, so
// /order/item[2]/sku addresses the second "item" child.
struct PathSegment {
    std::string name;
    int index = 1;

    bool operator==(const PathSegment&) const = default;
};

using BodyPath = std::vector<PathSegment>;

// Parses "/a/b[2]/c"; throws std::invalid_argument on malformed paths.
BodyPath parse_body_path(const std::string& text);
std::string body_path_to_string(const BodyPath& path);

struct BodyTree {
    std::vector<BodyNode> roots;

    bool empty() const { return roots.empty(); }

    const BodyNode* find(const BodyPath& path) const;
    BodyNode* find(const BodyPath& path);
    const BodyNode* find(const std::string& path) const;
    BodyNode* find(const std::string& path);

    // Number of children named `name` under the node at `parent` (the roots
    // when parent is empty).
    std::size_t count_at(const BodyPath& parent, const std::string& name) const;

    bool operator==(const BodyTree& other) const { return roots == other.roots; }
    bool operator!=(const BodyTree& other) const { return !(*this == other); }
};

// Children list of the node addressed by path, or the roots for an empty
// path; nullptr when the path does not resolve or addresses a leaf.
const std::vector<BodyNode>* resolve_children(const BodyTree& tree, const BodyPath& path);
std::vector<BodyNode>* resolve_children(BodyTree& tree, const BodyPath& path);

// Keeps only the sub-trees addressed by `keep`; interior nodes stay when at
// least one kept path runs through them.
BodyTree project_body(const BodyTree& tree, const std::vector<BodyPath>& keep);

// Removes any chain of interior nodes with exactly one child, splicing the
// child into the parent position.
BodyTree flatten_single_chains(const BodyTree& tree);

} // namespace eipflow
