/*
 * Copyright 2026 The pgfix authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pgfix {

using NodeId = uint32_t;

enum class Player : uint8_t { Even = 0, Odd = 1 };

inline Player opponent(Player p) { return p == Player::Even ? Player::Odd : Player::Even; }

inline const char* player_name(Player p) { return p == Player::Even ? "Even" : "Odd"; }

/** Error categories surfaced by the library. One exception type carries the
 *  category plus, for file input, the offending 1-based line number. */
enum class ErrorKind {
    EmptyGame,
    NoSuccessor,
    DanglingEdge,
    NegativePriority,
    DuplicateEdge,
    DuplicateNode,
    InvalidName,
    SyntaxError,
    LengthMismatch,
    ResourceLimit,
    TerminalConfig,
    ExtractionStuck,
    InvalidSpec,
    InvariantViolation,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what, uint32_t line = 0)
        : std::runtime_error(what), kind(kind), line(line) {}

    ErrorKind kind;
    uint32_t line; // 1-based input line for SyntaxError and friends, 0 otherwise
};

/** Dense bit set over a fixed universe [0, n).
 *
 *  This is the working currency of the solvers: variable banks, winning
 *  regions and priority masks are all NodeSets, so membership tests and the
 *  bulk operators must stay cheap. Sets up to 128 nodes live inline; larger
 *  universes spill to the heap. All binary operators require both operands
 *  to share a universe.
 */
class NodeSet {
  public:
    NodeSet() : n_(0), nwords_(0) { buf_[0] = buf_[1] = 0; }

    explicit NodeSet(uint32_t universe) : n_(universe), nwords_(words_for(universe)) {
        if (nwords_ > kInlineWords) heap_ = new uint64_t[nwords_]();
        else buf_[0] = buf_[1] = 0;
    }

    static NodeSet all(uint32_t universe) {
        NodeSet s(universe);
        s.set_all();
        return s;
    }

    NodeSet(const NodeSet& o) : n_(o.n_), nwords_(o.nwords_) {
        if (nwords_ > kInlineWords) {
            heap_ = new uint64_t[nwords_];
            std::memcpy(heap_, o.heap_, nwords_ * 8);
        } else {
            buf_[0] = o.buf_[0];
            buf_[1] = o.buf_[1];
        }
    }

    NodeSet(NodeSet&& o) noexcept : n_(o.n_), nwords_(o.nwords_) {
        if (nwords_ > kInlineWords) {
            heap_ = o.heap_;
            o.heap_ = nullptr;
            o.nwords_ = 0;
            o.n_ = 0;
        } else {
            buf_[0] = o.buf_[0];
            buf_[1] = o.buf_[1];
        }
    }

    NodeSet& operator=(const NodeSet& o) {
        if (this == &o) return *this;
        if (nwords_ == o.nwords_ && nwords_ > kInlineWords) {
            // same heap footprint: reuse the allocation
            std::memcpy(heap_, o.heap_, nwords_ * 8);
            n_ = o.n_;
            return *this;
        }
        this->~NodeSet();
        new (this) NodeSet(o);
        return *this;
    }

    NodeSet& operator=(NodeSet&& o) noexcept {
        if (this == &o) return *this;
        this->~NodeSet();
        new (this) NodeSet(std::move(o));
        return *this;
    }

    ~NodeSet() {
        if (nwords_ > kInlineWords) delete[] heap_;
    }

    uint32_t universe() const { return n_; }

    bool test(uint32_t v) const { return (words()[v >> 6] >> (v & 63)) & 1; }

    void set(uint32_t v) { words()[v >> 6] |= uint64_t(1) << (v & 63); }

    void reset(uint32_t v) { words()[v >> 6] &= ~(uint64_t(1) << (v & 63)); }

    void clear() {
        uint64_t* w = words();
        for (uint32_t i = 0; i < nwords_; ++i) w[i] = 0;
    }

    void set_all() {
        uint64_t* w = words();
        for (uint32_t i = 0; i < nwords_; ++i) w[i] = ~uint64_t(0);
        mask_tail();
    }

    /** Flip membership of every node in the universe. */
    void complement() {
        uint64_t* w = words();
        for (uint32_t i = 0; i < nwords_; ++i) w[i] = ~w[i];
        mask_tail();
    }

    bool empty() const {
        const uint64_t* w = words();
        for (uint32_t i = 0; i < nwords_; ++i)
            if (w[i]) return false;
        return true;
    }

    bool any() const { return !empty(); }

    uint32_t count() const {
        const uint64_t* w = words();
        uint32_t c = 0;
        for (uint32_t i = 0; i < nwords_; ++i) c += (uint32_t)__builtin_popcountll(w[i]);
        return c;
    }

    bool operator==(const NodeSet& o) const {
        check_universe(o);
        const uint64_t *a = words(), *b = o.words();
        for (uint32_t i = 0; i < nwords_; ++i)
            if (a[i] != b[i]) return false;
        return true;
    }

    bool operator!=(const NodeSet& o) const { return !(*this == o); }

    NodeSet& operator|=(const NodeSet& o) {
        check_universe(o);
        uint64_t* a = words();
        const uint64_t* b = o.words();
        for (uint32_t i = 0; i < nwords_; ++i) a[i] |= b[i];
        return *this;
    }

    NodeSet& operator&=(const NodeSet& o) {
        check_universe(o);
        uint64_t* a = words();
        const uint64_t* b = o.words();
        for (uint32_t i = 0; i < nwords_; ++i) a[i] &= b[i];
        return *this;
    }

    /** Remove every element of o from this set. */
    NodeSet& operator-=(const NodeSet& o) {
        check_universe(o);
        uint64_t* a = words();
        const uint64_t* b = o.words();
        for (uint32_t i = 0; i < nwords_; ++i) a[i] &= ~b[i];
        return *this;
    }

    bool subset_of(const NodeSet& o) const {
        check_universe(o);
        const uint64_t *a = words(), *b = o.words();
        for (uint32_t i = 0; i < nwords_; ++i)
            if (a[i] & ~b[i]) return false;
        return true;
    }

    bool intersects(const NodeSet& o) const {
        check_universe(o);
        const uint64_t *a = words(), *b = o.words();
        for (uint32_t i = 0; i < nwords_; ++i)
            if (a[i] & b[i]) return true;
        return false;
    }

    /** Visit members in ascending order. */
    template <typename F>
    void for_each(F&& f) const {
        const uint64_t* w = words();
        for (uint32_t i = 0; i < nwords_; ++i) {
            uint64_t m = w[i];
            while (m) {
                f((uint32_t)(i * 64 + __builtin_ctzll(m)));
                m &= m - 1;
            }
        }
    }

    std::vector<uint32_t> to_vector() const {
        std::vector<uint32_t> out;
        out.reserve(count());
        for_each([&](uint32_t v) { out.push_back(v); });
        return out;
    }

  private:
    static constexpr uint32_t kInlineWords = 2;

    static uint32_t words_for(uint32_t n) { return (n + 63) / 64; }

    uint64_t* words() { return nwords_ > kInlineWords ? heap_ : buf_; }
    const uint64_t* words() const { return nwords_ > kInlineWords ? heap_ : buf_; }

    void mask_tail() {
        if (n_ == 0) return;
        uint32_t used = n_ & 63;
        if (used) words()[nwords_ - 1] &= (~uint64_t(0)) >> (64 - used);
    }

    void check_universe(const NodeSet& o) const {
        if (n_ != o.n_)
            throw Error(ErrorKind::LengthMismatch, "NodeSet universe mismatch: " +
                                                       std::to_string(n_) + " vs " +
                                                       std::to_string(o.n_));
    }

    uint32_t n_;
    uint32_t nwords_;
    union {
        uint64_t buf_[kInlineWords];
        uint64_t* heap_;
    };
};

inline NodeSet operator|(NodeSet a, const NodeSet& b) { a |= b; return a; }
inline NodeSet operator&(NodeSet a, const NodeSet& b) { a &= b; return a; }
inline NodeSet operator-(NodeSet a, const NodeSet& b) { a -= b; return a; }

/** Input description of one node, consumed by build_game. */
struct NodeSpec {
    int64_t priority;
    Player owner;
    std::vector<NodeId> successors;
    std::string name; // empty = unnamed

    NodeSpec(int64_t priority, Player owner, std::vector<NodeId> successors,
             std::string name = {})
        : priority(priority), owner(owner), successors(std::move(successors)),
          name(std::move(name)) {}
};

/** Immutable parity game.
 *
 *  Nodes are dense ids 0..n-1. Every node carries a priority >= 0, an owner
 *  and a nonempty ordered successor list. Successor and predecessor lists
 *  are stored CSR-style; the per-priority node masks and the ownership masks
 *  are precomputed so solvers can grab them without rebuilding.
 */
class ParityGame {
  public:
    ParityGame(std::vector<uint32_t> priorities, std::vector<Player> owners,
               std::vector<uint32_t> succ_offsets, std::vector<NodeId> succs,
               std::vector<std::string> names = {})
        : priority_(std::move(priorities)), owner_(std::move(owners)),
          succ_off_(std::move(succ_offsets)), succ_(std::move(succs)),
          names_(std::move(names)) {
        validate();
        index_();
    }

    uint32_t node_count() const { return (uint32_t)priority_.size(); }
    uint32_t edge_count() const { return (uint32_t)succ_.size(); }

    /** Exclusive upper bound on priorities: max priority + 1. Solvers size
     *  their variable banks by this. */
    uint32_t priority_bound() const { return max_priority_ + 1; }

    uint32_t max_priority() const { return max_priority_; }
    uint32_t min_priority() const { return min_priority_; }

    /** max - min + 1; the "index" reported by the bench tooling. */
    uint32_t priority_span() const { return max_priority_ - min_priority_ + 1; }

    uint32_t priority(NodeId v) const { return priority_[v]; }
    Player owner(NodeId v) const { return owner_[v]; }

    std::span<const NodeId> successors(NodeId v) const {
        return {succ_.data() + succ_off_[v], succ_.data() + succ_off_[v + 1]};
    }

    std::span<const NodeId> predecessors(NodeId v) const {
        return {pred_.data() + pred_off_[v], pred_.data() + pred_off_[v + 1]};
    }

    bool has_names() const { return !names_.empty(); }

    const std::string& name(NodeId v) const {
        static const std::string empty;
        return names_.empty() ? empty : names_[v];
    }

    const NodeSet& owned_by(Player p) const {
        return p == Player::Even ? even_mask_ : odd_mask_;
    }

    /** Mask of nodes with the given priority; empty set for unused levels. */
    const NodeSet& priority_mask(uint32_t prio) const { return prio_masks_[prio]; }

    NodeSet full_set() const { return NodeSet::all(node_count()); }

  private:
    void validate() const {
        uint32_t n = (uint32_t)priority_.size();
        if (n == 0) throw Error(ErrorKind::EmptyGame, "game has no nodes");
        if (owner_.size() != n || succ_off_.size() != n + 1 ||
            (!names_.empty() && names_.size() != n))
            throw Error(ErrorKind::LengthMismatch, "node attribute arrays disagree on n");
        for (uint32_t v = 0; v < n; ++v) {
            uint32_t lo = succ_off_[v], hi = succ_off_[v + 1];
            if (lo >= hi) throw Error(ErrorKind::NoSuccessor,
                                      "node " + std::to_string(v) + " has no successor");
            for (uint32_t k = lo; k < hi; ++k) {
                if (succ_[k] >= n)
                    throw Error(ErrorKind::DanglingEdge,
                                "node " + std::to_string(v) + " has successor " +
                                    std::to_string(succ_[k]) + " outside [0," +
                                    std::to_string(n) + ")");
                for (uint32_t j = lo; j < k; ++j)
                    if (succ_[j] == succ_[k])
                        throw Error(ErrorKind::DuplicateEdge,
                                    "node " + std::to_string(v) + " lists successor " +
                                        std::to_string(succ_[k]) + " twice");
            }
        }
        for (const std::string& nm : names_)
            if (nm.find('"') != std::string::npos || nm.find('\n') != std::string::npos)
                throw Error(ErrorKind::InvalidName, "node name contains '\"' or newline");
    }

    void index_() {
        uint32_t n = node_count();
        max_priority_ = 0;
        min_priority_ = priority_[0];
        for (uint32_t v = 0; v < n; ++v) {
            if (priority_[v] > max_priority_) max_priority_ = priority_[v];
            if (priority_[v] < min_priority_) min_priority_ = priority_[v];
        }
        even_mask_ = NodeSet(n);
        odd_mask_ = NodeSet(n);
        prio_masks_.assign(max_priority_ + 1, NodeSet(n));
        for (uint32_t v = 0; v < n; ++v) {
            (owner_[v] == Player::Even ? even_mask_ : odd_mask_).set(v);
            prio_masks_[priority_[v]].set(v);
        }
        // reverse adjacency
        pred_off_.assign(n + 1, 0);
        for (NodeId t : succ_) pred_off_[t + 1]++;
        for (uint32_t v = 0; v < n; ++v) pred_off_[v + 1] += pred_off_[v];
        pred_.resize(succ_.size());
        std::vector<uint32_t> cursor(pred_off_.begin(), pred_off_.end() - 1);
        for (uint32_t v = 0; v < n; ++v)
            for (NodeId t : successors(v)) pred_[cursor[t]++] = v;
    }

    std::vector<uint32_t> priority_;
    std::vector<Player> owner_;
    std::vector<uint32_t> succ_off_;
    std::vector<NodeId> succ_;
    std::vector<std::string> names_;

    std::vector<uint32_t> pred_off_;
    std::vector<NodeId> pred_;
    uint32_t max_priority_ = 0;
    uint32_t min_priority_ = 0;
    NodeSet even_mask_, odd_mask_;
    std::vector<NodeSet> prio_masks_;
};

/** Number of priority values actually carried by some node. */
inline uint32_t distinct_priority_count(const ParityGame& g) {
    uint32_t c = 0;
    for (uint32_t q = 0; q <= g.max_priority(); ++q)
        if (g.priority_mask(q).any()) ++c;
    return c;
}

inline ParityGame build_game(const std::vector<NodeSpec>& nodes) {
    if (nodes.empty()) throw Error(ErrorKind::EmptyGame, "game has no nodes");
    uint32_t n = (uint32_t)nodes.size();
    std::vector<uint32_t> prio(n);
    std::vector<Player> owner(n);
    std::vector<uint32_t> off(n + 1, 0);
    std::vector<NodeId> succ;
    bool named = false;
    for (uint32_t v = 0; v < n; ++v) {
        if (nodes[v].priority < 0)
            throw Error(ErrorKind::NegativePriority,
                        "node " + std::to_string(v) + " has negative priority");
        prio[v] = (uint32_t)nodes[v].priority;
        owner[v] = nodes[v].owner;
        off[v + 1] = off[v] + (uint32_t)nodes[v].successors.size();
        succ.insert(succ.end(), nodes[v].successors.begin(), nodes[v].successors.end());
        named |= !nodes[v].name.empty();
    }
    std::vector<std::string> names;
    if (named) {
        names.resize(n);
        for (uint32_t v = 0; v < n; ++v) names[v] = nodes[v].name;
    }
    return ParityGame(std::move(prio), std::move(owner), std::move(off), std::move(succ),
                      std::move(names));
}

/** Remap priorities onto the smallest parity-preserving initial segment.
 *
 *  Distinct priorities are sorted; runs of equal parity collapse onto one
 *  value, and the lowest class maps to 0 or 1 according to its own parity.
 *  Winners are unchanged (a play's maximal recurring priority keeps its
 *  parity and the relative order of classes is preserved).
 */
inline std::pair<ParityGame, std::map<uint32_t, uint32_t>>
compress_priorities(const ParityGame& g) {
    std::vector<bool> used(g.priority_bound(), false);
    for (uint32_t v = 0; v < g.node_count(); ++v) used[g.priority(v)] = true;

    std::map<uint32_t, uint32_t> mapping;
    uint32_t next = 0;
    bool first = true;
    for (uint32_t p = 0; p < used.size(); ++p) {
        if (!used[p]) continue;
        if (first) {
            next = p % 2;
            first = false;
        } else if (next % 2 != p % 2) {
            ++next;
        }
        mapping[p] = next;
    }

    std::vector<NodeSpec> nodes;
    nodes.reserve(g.node_count());
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        auto ss = g.successors(v);
        nodes.emplace_back((int64_t)mapping[g.priority(v)], g.owner(v),
                           std::vector<NodeId>(ss.begin(), ss.end()),
                           g.has_names() ? g.name(v) : std::string());
    }
    return {build_game(nodes), std::move(mapping)};
}

} // namespace pgfix
