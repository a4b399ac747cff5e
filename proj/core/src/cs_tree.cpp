#include <srpe/cs_tree.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace srpe {

void RevocationList::add(std::size_t leaf, std::uint64_t epoch) {
    RevocationEntry e{leaf, epoch};
    if (std::find(entries_.begin(), entries_.end(), e) != entries_.end()) return;
    entries_.push_back(e);
}

bool RevocationList::revoked_at(std::size_t leaf, std::uint64_t epoch) const {
    for (const auto& e : entries_)
        if (e.leaf == leaf && e.epoch <= epoch) return true;
    return false;
}

BinaryTreeState::BinaryTreeState(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("BinaryTreeState: capacity must be >= 1");
    depth_ = 0;
    while ((std::size_t{1} << depth_) < capacity) ++depth_;
}

std::size_t BinaryTreeState::assign_leaf(const std::string& id) {
    if (leaf_map_.contains(id)) throw std::invalid_argument("assign_leaf: duplicate id");
    if (leaf_map_.size() >= capacity_) throw std::runtime_error("assign_leaf: tree full");
    std::size_t leaf = num_leaves() + leaf_map_.size();
    leaf_map_.emplace(id, leaf);
    return leaf;
}

std::optional<std::size_t> BinaryTreeState::leaf_of(const std::string& id) const {
    auto it = leaf_map_.find(id);
    if (it == leaf_map_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> BinaryTreeState::path(std::size_t leaf) const {
    if (leaf < num_leaves() || leaf >= 2 * num_leaves())
        throw std::invalid_argument("path: not a leaf index");
    std::vector<std::size_t> nodes;
    for (std::size_t cur = leaf; cur >= 1; cur /= 2) {
        nodes.push_back(cur);
        if (cur == 1) break;
    }
    return nodes;
}

bool BinaryTreeState::has_node_matrix(std::size_t node) const {
    return node_store_.contains(node);
}

const ZqMatrix& BinaryTreeState::node_matrix(std::size_t node) const {
    auto it = node_store_.find(node);
    if (it == node_store_.end()) throw std::invalid_argument("node_matrix: undefined node");
    return it->second;
}

void BinaryTreeState::store_node_matrix(std::size_t node, ZqMatrix u) {
    if (node < 1 || node >= 2 * num_leaves())
        throw std::invalid_argument("store_node_matrix: node index out of range");
    if (node_store_.contains(node))
        throw std::logic_error("store_node_matrix: node matrices are write-once");
    node_store_.emplace(node, std::move(u));
}

std::vector<std::size_t> ku_nodes(const BinaryTreeState& tree, const RevocationList& rl,
                                  std::uint64_t epoch) {
    std::set<std::size_t> x;
    for (const auto& e : rl.entries()) {
        if (e.epoch > epoch) continue;
        for (std::size_t node : tree.path(e.leaf)) x.insert(node);
    }
    std::set<std::size_t> y;
    const std::size_t leaf_lo = tree.num_leaves();
    for (std::size_t node : x) {
        if (node >= leaf_lo) continue;  // leaves have no children
        if (!x.contains(2 * node)) y.insert(2 * node);
        if (!x.contains(2 * node + 1)) y.insert(2 * node + 1);
    }
    if (y.empty()) y.insert(tree.root());
    return {y.begin(), y.end()};
}

std::optional<std::size_t> cover_check(const BinaryTreeState& tree, const RevocationList& rl,
                                       std::uint64_t epoch, std::size_t leaf) {
    if (rl.revoked_at(leaf, epoch)) return std::nullopt;
    std::vector<std::size_t> cover = ku_nodes(tree, rl, epoch);
    std::optional<std::size_t> best;
    for (std::size_t node : tree.path(leaf))
        for (std::size_t c : cover)
            if (node == c && (!best || c < *best)) best = c;
    return best;
}

// --- persistence -------------------------------------------------------------

namespace {

std::string to_hex(const std::string& s) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * s.size());
    for (unsigned char c : s) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

std::string from_hex(const std::string& s) {
    if (s.size() % 2) throw std::invalid_argument("state file: bad hex id");
    auto nib = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return 10 + c - 'a';
        if (c >= 'A' && c <= 'F') return 10 + c - 'A';
        throw std::invalid_argument("state file: bad hex id");
    };
    std::string out;
    for (std::size_t i = 0; i < s.size(); i += 2)
        out.push_back(static_cast<char>((nib(s[i]) << 4) | nib(s[i + 1])));
    return out;
}

}  // namespace

std::string node_matrix_ref(std::size_t node) {
    return "nodes/U_" + std::to_string(node) + ".srpe";
}

std::string state_to_text(const BinaryTreeState& tree, const RevocationList& rl) {
    std::ostringstream out;
    out << "SRPE-STATE v1\n";
    out << "CAPACITY " << tree.capacity() << "\n";
    // leaves in assignment order so reload preserves next-free-leaf
    std::vector<std::pair<std::size_t, std::string>> by_leaf;
    for (const auto& [id, leaf] : tree.leaf_map()) by_leaf.emplace_back(leaf, id);
    std::sort(by_leaf.begin(), by_leaf.end());
    for (const auto& [leaf, id] : by_leaf) out << "LEAF " << to_hex(id) << " " << leaf << "\n";
    for (const auto& [node, mat] : tree.node_store())
        out << "NODE " << node << " " << node_matrix_ref(node) << "\n";
    for (const auto& e : rl.entries()) out << "RL " << e.leaf << " " << e.epoch << "\n";
    return out.str();
}

ParsedState parse_state_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header != "SRPE-STATE v1")
        throw std::invalid_argument("state file: unknown header");
    std::string word;
    std::size_t capacity = 0;
    if (!(in >> word >> capacity) || word != "CAPACITY")
        throw std::invalid_argument("state file: missing CAPACITY");
    ParsedState out{BinaryTreeState(capacity), {}, {}};
    while (in >> word) {
        if (word == "LEAF") {
            std::string hexid;
            std::size_t leaf;
            in >> hexid >> leaf;
            std::size_t got = out.tree.assign_leaf(from_hex(hexid));
            if (got != leaf) throw std::invalid_argument("state file: leaf order corrupted");
        } else if (word == "NODE") {
            std::size_t node;
            std::string ref;
            in >> node >> ref;
            out.node_refs.emplace_back(node, ref);
        } else if (word == "RL") {
            std::size_t leaf;
            std::uint64_t epoch;
            in >> leaf >> epoch;
            out.rl.add(leaf, epoch);
        } else {
            throw std::invalid_argument("state file: unknown record " + word);
        }
    }
    return out;
}

}  // namespace srpe
