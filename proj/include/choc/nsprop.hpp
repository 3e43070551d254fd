#pragma once

#include <bit>
#include <functional>
#include <optional>
#include <set>

#include "choc/core.hpp"
#include "choc/fdsl.hpp"

// The NS property for monotone unary functions, axis slices of
// multivariate functions, and the floor-interval decompositions. A
// monotone h has the NS property when floor(z/2^i) = floor(z'/2^i)
// forces floor(h(z)/2^(i-1)) = floor(h(z')/2^(i-1)) for every i >= 1.
// All checkers here are bounded: a positive verdict is a certificate on
// [0, B] only, never an unbounded claim.

namespace choc::nsprop {

using UnaryFn = std::function<Coord(Coord)>;

struct MonotonicityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NSWitness {
    Coord z = 0, z_prime = 0;
    unsigned i = 0;
};

struct NSReport {
    bool holds_on_bound = false;
    Coord bound = 0;
    unsigned i_max = 0;  // exponents checked: 1..i_max
    std::optional<NSWitness> witness;
};

inline unsigned bit_length(Coord v) { return v == 0 ? 0 : std::bit_width(v); }

// Exhaustive pair scan on [0, B]. Exponents above
// bitlength(max(B, h(B))) + 1 are vacuous on this domain, so the range
// is finite and complete for the bound.
inline NSReport check_ns(const UnaryFn& h, Coord bound) {
    std::vector<Coord> hv(bound + 1);
    for (Coord z = 0; z <= bound; ++z) {
        hv[z] = h(z);
        if (z > 0 && hv[z] < hv[z - 1])
            throw MonotonicityError("function is not monotone: h(" + std::to_string(z - 1) +
                                    ") = " + std::to_string(hv[z - 1]) + " > h(" +
                                    std::to_string(z) + ") = " + std::to_string(hv[z]));
    }
    NSReport report;
    report.bound = bound;
    report.i_max = bit_length(std::max(bound, hv[bound])) + 1;
    for (Coord z = 0; z <= bound; ++z) {
        for (Coord zp = z + 1; zp <= bound; ++zp) {
            for (unsigned i = 1; i <= report.i_max; ++i) {
                if ((z >> i) == (zp >> i) && (hv[z] >> (i - 1)) != (hv[zp] >> (i - 1))) {
                    report.holds_on_bound = false;
                    report.witness = NSWitness{z, zp, i};
                    return report;
                }
            }
        }
    }
    report.holds_on_bound = true;
    return report;
}

// Re-evaluates a claimed witness from scratch.
inline bool witness_violates_ns(const UnaryFn& h, const NSWitness& w) {
    return (w.z >> w.i) == (w.z_prime >> w.i) &&
           (h(w.z) >> (w.i - 1)) != (h(w.z_prime) >> (w.i - 1));
}

// Unary restriction of F with all arguments but one fixed.
struct SliceFunction {
    BaseFn source;
    int axis = 0;  // 0-based
    std::vector<Coord> fixed;  // the full tuple; entry `axis` is overwritten

    Coord operator()(Coord v) const {
        std::vector<Coord> c = fixed;
        c[static_cast<std::size_t>(axis)] = v;
        return source(c);
    }
};

inline SliceFunction slice(const BaseFn& f, int arity, int axis, std::vector<Coord> fixed) {
    if (axis < 0 || axis >= arity) throw ArityError("slice axis out of range");
    if (fixed.size() != static_cast<std::size_t>(arity))
        throw ArityError("fixed tuple must have one entry per argument");
    return SliceFunction{f, axis, std::move(fixed)};
}

inline SliceFunction slice(const fdsl::FunctionSpec& spec, int axis, std::vector<Coord> fixed) {
    return slice([spec](std::span<const Coord> c) { return spec.eval(c); }, spec.arity(), axis,
                 std::move(fixed));
}

struct SliceReport {
    int axis = 0;
    std::vector<Coord> fixed;  // the fixed coordinates, axis entry omitted
    NSReport ns;
};

struct SliceSweep {
    bool all_hold = true;
    std::vector<SliceReport> slices;  // (axis, fixed) lexicographic order
};

// One NS check per (axis, fixed tuple) within bounds. The NS bound for a
// slice is the bound of its own free axis.
inline SliceSweep check_all_slices(const BaseFn& f, int arity, std::span<const Coord> bounds) {
    if (bounds.size() != static_cast<std::size_t>(arity))
        throw ArityError("bounds arity mismatch");
    SliceSweep sweep;
    for (int axis = 0; axis < arity; ++axis) {
        std::vector<Coord> fixed(static_cast<std::size_t>(arity), 0);
        for (;;) {
            SliceFunction g = slice(f, arity, axis, fixed);
            SliceReport sr;
            sr.axis = axis;
            for (int j = 0; j < arity; ++j)
                if (j != axis) sr.fixed.push_back(fixed[static_cast<std::size_t>(j)]);
            sr.ns = check_ns([&g](Coord v) { return g(v); }, bounds[static_cast<std::size_t>(axis)]);
            if (!sr.ns.holds_on_bound) sweep.all_hold = false;
            sweep.slices.push_back(std::move(sr));
            // advance the fixed coordinates, skipping the free axis
            int j = 0;
            while (j < arity &&
                   (j == axis || fixed[static_cast<std::size_t>(j)] ==
                                     bounds[static_cast<std::size_t>(j)])) {
                if (j != axis) fixed[static_cast<std::size_t>(j)] = 0;
                ++j;
            }
            if (j == arity) break;
            ++fixed[static_cast<std::size_t>(j)];
        }
    }
    return sweep;
}

struct ABSets {
    std::set<Coord> a, b;
    bool equal = false;
};

// A = { y xor (z-k) }, B = { min(y, h(z-k)) xor (z-k) } for k = 1..z.
// Equality holds whenever h has the NS property and y <= h(z).
inline ABSets ab_sets(const UnaryFn& h, Coord y, Coord z) {
    if (y > h(z))
        throw PreconditionError("ab_sets requires y <= h(z)");
    ABSets r;
    for (Coord k = 1; k <= z; ++k) {
        r.a.insert(y ^ (z - k));
        r.b.insert(std::min(y, h(z - k)) ^ (z - k));
    }
    r.equal = r.a == r.b;
    return r;
}

struct FloorDecomposition {
    bool equal = false;
    // equal: d * 2^i <= z < z' < (d+1) * 2^i
    Coord d = 0;
    // not equal: z = c * 2^(s+1) + t < c * 2^(s+1) + 2^s <= z', s >= i, t < 2^s
    Coord c = 0;
    unsigned s = 0;
    Coord t = 0;
};

// For z < z': either the floors by 2^i agree and z, z' share the i-bit
// prefix block, or they differ and the highest differing bit yields the
// split decomposition.
inline FloorDecomposition floor_interval_check(Coord z, Coord z_prime, unsigned i) {
    if (z >= z_prime) throw PreconditionError("floor_interval_check requires z < z'");
    FloorDecomposition r;
    if ((z >> i) == (z_prime >> i)) {
        r.equal = true;
        r.d = z >> i;
        return r;
    }
    r.equal = false;
    unsigned s = bit_length(z ^ z_prime) - 1;  // highest differing bit; z has 0 there
    r.s = s;
    r.c = z >> (s + 1);
    r.t = z & ((Coord{1} << (s + 1)) - 1);
    return r;
}

}  // namespace choc::nsprop
