#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evotfs/errors.hpp"
#include "evotfs/terminals.hpp"
#include "evotfs/ucr.hpp"

namespace evotfs {

// Strongly-typed tree grammar. Four layers: subseries/constant terminals feed
// an arithmetic (Smelt) layer that outputs length-L arrays; the 3-ary Connect
// root concatenates three arrays into the output series. Connect's output
// type is accepted by no function, so it can only ever sit at the root.

enum class NodeOp : std::uint8_t { Subseries, Constant, Add, Sub, Mul, ProtDiv, Connect };

enum class GpType : std::uint8_t { Array, Float, Output };

inline GpType result_type(NodeOp op) {
    switch (op) {
        case NodeOp::Constant: return GpType::Float;
        case NodeOp::Connect: return GpType::Output;
        default: return GpType::Array;
    }
}

inline int arity(NodeOp op) {
    switch (op) {
        case NodeOp::Subseries:
        case NodeOp::Constant: return 0;
        case NodeOp::Connect: return 3;
        default: return 2;
    }
}

inline const char* op_name(NodeOp op) {
    switch (op) {
        case NodeOp::Subseries: return "S#";
        case NodeOp::Constant: return "";
        case NodeOp::Add: return "Add";
        case NodeOp::Sub: return "Sub";
        case NodeOp::Mul: return "Mul";
        case NodeOp::ProtDiv: return "ProtDiv";
        case NodeOp::Connect: return "Connect";
    }
    return "?";
}

struct GpNode {
    NodeOp op = NodeOp::Constant;
    std::uint32_t pool_index = 0;  // Subseries only
    double value = 0.0;            // Constant only
    std::vector<GpNode> children;

    static GpNode subseries(std::uint32_t index) {
        GpNode n;
        n.op = NodeOp::Subseries;
        n.pool_index = index;
        return n;
    }
    static GpNode constant(double v) {
        GpNode n;
        n.op = NodeOp::Constant;
        n.value = v;
        return n;
    }
    static GpNode make(NodeOp op, std::vector<GpNode> ch) {
        GpNode n;
        n.op = op;
        n.children = std::move(ch);
        return n;
    }
};

struct GpTree {
    GpNode root;
};

inline int depth(const GpNode& n) {
    int d = 0;
    for (const auto& c : n.children) d = std::max(d, 1 + depth(c));
    return d;
}

inline std::size_t node_count(const GpNode& n) {
    std::size_t c = 1;
    for (const auto& ch : n.children) c += node_count(ch);
    return c;
}

inline int depth(const GpTree& t) { return depth(t.root); }
inline std::size_t node_count(const GpTree& t) { return node_count(t.root); }

namespace detail {

inline bool valid_subtree(const GpNode& n, std::size_t pool_size, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (static_cast<int>(n.children.size()) != arity(n.op)) return fail("arity mismatch");
    switch (n.op) {
        case NodeOp::Subseries:
            if (n.pool_index >= pool_size) return fail("subseries index out of range");
            return true;
        case NodeOp::Constant:
            if (!(n.value >= TerminalPool::kConstMin && n.value <= TerminalPool::kConstMax))
                return fail("constant outside [-1, 1]");
            return true;
        case NodeOp::Connect:
            return fail("Connect below the root");
        default: {
            int arrays = 0;
            for (const auto& c : n.children) {
                if (result_type(c.op) == GpType::Output) return fail("Connect below the root");
                if (result_type(c.op) == GpType::Array) ++arrays;
                if (!valid_subtree(c, pool_size, why)) return false;
            }
            if (arrays < 1) return fail("arithmetic node without an Array child");
            return true;
        }
    }
}

}  // namespace detail

/// Full structural check: root is Connect, arities match, every arithmetic
/// node has at least one Array child, Connect never nests, pool indices are
/// in range, and depth stays within max_depth.
inline bool valid_tree(const GpTree& t, std::size_t pool_size, int max_depth, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (t.root.op != NodeOp::Connect) return fail("root is not Connect");
    if (t.root.children.size() != 3) return fail("root arity != 3");
    for (const auto& c : t.root.children) {
        if (result_type(c.op) != GpType::Array) return fail("Connect child is not Array-typed");
        if (!detail::valid_subtree(c, pool_size, why)) return false;
    }
    if (depth(t) > max_depth) return fail("depth exceeds bound");
    return true;
}

// --- evaluation ------------------------------------------------------------

// Values never leave [-kClampLimit, kClampLimit]: every arithmetic result
// element is clamped, so overflow cannot propagate and no NaN can form.
inline constexpr double kClampLimit = 1e6;

namespace detail {

inline double clamp_finite(double v) {
    if (v > kClampLimit) return kClampLimit;
    if (v < -kClampLimit) return -kClampLimit;
    if (std::isnan(v)) return kClampLimit;
    return v;
}

struct EvalValue {
    bool is_array = false;
    double scalar = 0.0;
    std::vector<double> array;
};

inline double apply_op(NodeOp op, double a, double b) {
    switch (op) {
        case NodeOp::Add: return a + b;
        case NodeOp::Sub: return a - b;
        case NodeOp::Mul: return a * b;
        case NodeOp::ProtDiv: return b == 0.0 ? 1.0 : a / b;
        default: throw InvalidTree("not an arithmetic op");
    }
}

inline EvalValue eval_node(const GpNode& n, const TerminalPool& pool) {
    switch (n.op) {
        case NodeOp::Subseries: {
            EvalValue v;
            v.is_array = true;
            v.array = pool.subseries.at(n.pool_index);
            return v;
        }
        case NodeOp::Constant: {
            EvalValue v;
            v.scalar = n.value;
            return v;
        }
        case NodeOp::Connect:
            throw InvalidTree("Connect below the root");
        default: {
            EvalValue a = eval_node(n.children[0], pool);
            EvalValue b = eval_node(n.children[1], pool);
            if (!a.is_array && !b.is_array) throw InvalidTree("arithmetic node with two Float children");
            EvalValue out;
            out.is_array = true;
            if (a.is_array && b.is_array) {
                out.array.resize(a.array.size());
                for (std::size_t i = 0; i < a.array.size(); ++i)
                    out.array[i] = clamp_finite(apply_op(n.op, a.array[i], b.array[i]));
            } else if (a.is_array) {
                out.array.resize(a.array.size());
                for (std::size_t i = 0; i < a.array.size(); ++i)
                    out.array[i] = clamp_finite(apply_op(n.op, a.array[i], b.scalar));
            } else {
                out.array.resize(b.array.size());
                for (std::size_t i = 0; i < b.array.size(); ++i)
                    out.array[i] = clamp_finite(apply_op(n.op, a.scalar, b.array[i]));
            }
            return out;
        }
    }
}

}  // namespace detail

/// Evaluate a type-valid tree into a synthetic series of exactly out_len
/// values: Connect concatenates its three length-L children and the result
/// is truncated to the first out_len elements (requires 3L >= out_len).
inline std::vector<double> evaluate_tree(const GpTree& t, const TerminalPool& pool, std::size_t out_len) {
    if (t.root.op != NodeOp::Connect || t.root.children.size() != 3)
        throw InvalidTree("root must be Connect with three children");
    std::vector<double> out;
    out.reserve(3 * pool.window_len);
    for (const auto& c : t.root.children) {
        auto v = detail::eval_node(c, pool);
        if (!v.is_array) throw InvalidTree("Connect child evaluated to a Float");
        out.insert(out.end(), v.array.begin(), v.array.end());
    }
    if (out.size() < out_len)
        throw LengthMismatch("Connect yields " + std::to_string(out.size()) + " values, need " +
                             std::to_string(out_len));
    out.resize(out_len);
    return out;
}

// --- printing ---------------------------------------------------------------

namespace detail {

inline void print_node(const GpNode& n, std::string& out) {
    switch (n.op) {
        case NodeOp::Subseries:
            out += "S#";
            out += std::to_string(n.pool_index);
            return;
        case NodeOp::Constant:
            out += format_value(n.value);
            return;
        default:
            out += op_name(n.op);
            out += '(';
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) out += ", ";
                print_node(n.children[i], out);
            }
            out += ')';
    }
}

}  // namespace detail

/// Prefix notation, e.g. `Connect(Add(S#17, 0.42), S#3, ProtDiv(S#8, S#8))`.
inline std::string tree_to_string(const GpTree& t) {
    std::string out;
    detail::print_node(t.root, out);
    return out;
}

}  // namespace evotfs
