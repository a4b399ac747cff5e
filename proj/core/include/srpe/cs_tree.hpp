#pragma once
/* cs_tree.hpp - complete-subtree revocation over a complete binary tree.
 *
 * Nodes are heap-indexed (root = 1, children of i are 2i and 2i+1); users
 * occupy leaves left to right in registration order.  ku_nodes computes the
 * minimal cover of non-revoked leaves for an epoch; per-node matrices are a
 * lazily assigned, write-once store.  The tree is a single-writer resource.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <srpe/zq.hpp>

namespace srpe {

struct RevocationEntry {
    std::size_t leaf = 0;  // heap index
    std::uint64_t epoch = 0;

    bool operator==(const RevocationEntry&) const = default;
    auto operator<=>(const RevocationEntry&) const = default;
};

/// Set of (leaf, epoch) pairs; an entry excludes its leaf from every cover
/// with epoch' >= epoch.  Un-revocation is not supported.
class RevocationList {
public:
    /// Idempotent insert.
    void add(std::size_t leaf, std::uint64_t epoch);
    bool revoked_at(std::size_t leaf, std::uint64_t epoch) const;
    const std::vector<RevocationEntry>& entries() const { return entries_; }

private:
    std::vector<RevocationEntry> entries_;
};

class BinaryTreeState {
public:
    /// Complete binary tree with 2^ceil(log2 capacity) leaves.
    explicit BinaryTreeState(std::size_t capacity);

    std::size_t depth() const { return depth_; }
    std::size_t capacity() const { return capacity_; }
    std::size_t num_leaves() const { return std::size_t{1} << depth_; }
    std::size_t root() const { return 1; }
    std::size_t user_count() const { return leaf_map_.size(); }

    /// Next free leaf, left to right; errors on a full tree or duplicate id.
    std::size_t assign_leaf(const std::string& id);
    std::optional<std::size_t> leaf_of(const std::string& id) const;
    const std::map<std::string, std::size_t>& leaf_map() const { return leaf_map_; }

    /// Leaf-to-root inclusive node list, length depth + 1.
    std::vector<std::size_t> path(std::size_t leaf) const;

    bool has_node_matrix(std::size_t node) const;
    const ZqMatrix& node_matrix(std::size_t node) const;
    /// Write-once; a second store on the same node is an error.
    void store_node_matrix(std::size_t node, ZqMatrix u);
    const std::map<std::size_t, ZqMatrix>& node_store() const { return node_store_; }

private:
    std::size_t depth_ = 0;
    std::size_t capacity_ = 0;
    std::map<std::string, std::size_t> leaf_map_;
    std::map<std::size_t, ZqMatrix> node_store_;
};

/// The node-selection step of the complete-subtree method: the smallest set
/// of nodes covering exactly the non-revoked leaves ({root} when nothing is
/// revoked).  Result is sorted by node index.
std::vector<std::size_t> ku_nodes(const BinaryTreeState& tree, const RevocationList& rl,
                                  std::uint64_t epoch);

/// The unique cover node on the leaf's path, or nullopt when the leaf is
/// revoked at the epoch.  Revocation status is decided first, so the
/// all-users-revoked corner cannot hand the root to a revoked leaf.
std::optional<std::size_t> cover_check(const BinaryTreeState& tree, const RevocationList& rl,
                                       std::uint64_t epoch, std::size_t leaf);

// --- text persistence -------------------------------------------------------

/// One record per line: LEAF hex(id) index / NODE index file-reference
/// / RL leaf epoch.  Matrix payloads live in the referenced files; reading
/// them back is the caller's job (see parse result).
std::string state_to_text(const BinaryTreeState& tree, const RevocationList& rl);

struct ParsedState {
    BinaryTreeState tree;
    RevocationList rl;
    std::vector<std::pair<std::size_t, std::string>> node_refs;  // index -> file ref
};

ParsedState parse_state_text(const std::string& text);

/// File reference emitted for a node matrix, relative to the keystore root.
std::string node_matrix_ref(std::size_t node);

}  // namespace srpe
