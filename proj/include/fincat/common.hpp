#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fincat {

// Default bound on intermediate enumeration sizes. Operations that would
// enumerate more states than the cap throw SizeExceeded instead.
inline constexpr std::uint64_t kDefaultCap = 1'000'000;

struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

inline void guard_size(std::uint64_t n, std::uint64_t cap, const std::string& where) {
    if (n > cap) throw Error("SizeExceeded", where + " needs " + std::to_string(n) + " states (cap " + std::to_string(cap) + ")");
}

// Multiply with saturation so size estimates never overflow.
inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > UINT64_MAX / b) return UINT64_MAX;
    return a * b;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

// Canonical encoding of a tuple of identifiers as a single identifier.
inline std::string tup(const std::vector<std::string>& parts) {
    return "(" + join(parts, ",") + ")";
}

// Advances a mixed-radix counter; returns false once it wraps to all-zero.
template <class Limits>
inline bool advance_odometer(std::vector<std::size_t>& idx, const Limits& limit) {
    std::size_t k = idx.size();
    while (k > 0) {
        if (++idx[k - 1] < limit(k - 1)) return true;
        idx[k - 1] = 0;
        --k;
    }
    return false;
}

struct UnionFind {
    mutable std::map<std::string, std::string> parent;

    void add(const std::string& x) { parent.emplace(x, x); }

    std::string find(const std::string& x) const {
        auto it = parent.find(x);
        if (it == parent.end()) throw Error("Internal", "union-find: unknown element " + x);
        if (it->second == x) return x;
        std::string root = find(it->second);
        it->second = root;
        return root;
    }

    void unite(const std::string& a, const std::string& b) {
        std::string ra = find(a), rb = find(b);
        if (ra == rb) return;
        // Keep the lexicographically least element as the root so class
        // names are independent of merge order.
        if (rb < ra) std::swap(ra, rb);
        parent[rb] = ra;
    }

    // class root -> sorted members
    std::map<std::string, std::vector<std::string>> classes() const {
        std::map<std::string, std::vector<std::string>> out;
        for (const auto& [x, _] : parent) out[find(x)].push_back(x);
        return out;
    }
};

} // namespace fincat
