#ifndef GENTREE_PERMUTATION_HPP
#define GENTREE_PERMUTATION_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gentree/errors.hpp"

namespace gentree {

// A permutation of [1, n] in one-line notation. Size-1 is the smallest
// object; the empty permutation is deliberately not representable.
class Permutation {
  public:
    Permutation() = default;

    explicit Permutation(std::vector<int> values) : v_(std::move(values)) {
        if (v_.empty()) throw DomainError("Permutation: empty one-line notation");
        std::vector<char> seen(v_.size() + 1, 0);
        for (int x : v_) {
            if (x < 1 || x > static_cast<int>(v_.size()) || seen[x])
                throw DomainError("Permutation: not a bijection on [1,n]");
            seen[x] = 1;
        }
    }

    struct unchecked_t {};
    Permutation(std::vector<int> values, unchecked_t) : v_(std::move(values)) {}

    int size() const { return static_cast<int>(v_.size()); }
    // 1-based access, matching the paper-style sigma(i).
    int operator()(int i) const { return v_[i - 1]; }
    const std::vector<int>& values() const { return v_; }

    bool operator==(const Permutation& o) const { return v_ == o.v_; }
    bool operator!=(const Permutation& o) const { return v_ != o.v_; }
    bool operator<(const Permutation& o) const { return v_ < o.v_; }

    Permutation inverse() const {
        std::vector<int> inv(v_.size());
        for (int i = 0; i < size(); ++i) inv[v_[i] - 1] = i + 1;
        return Permutation(std::move(inv), unchecked_t{});
    }

    // Compact form "421563" when all values fit one digit, else space-separated.
    std::string str() const {
        std::ostringstream os;
        if (size() <= 9) {
            for (int x : v_) os << x;
        } else {
            for (int i = 0; i < size(); ++i) os << (i ? " " : "") << v_[i];
        }
        return os.str();
    }

    static Permutation parse(const std::string& s) {
        std::vector<int> vals;
        if (s.find(' ') != std::string::npos || s.find(',') != std::string::npos) {
            std::string t = s;
            std::replace(t.begin(), t.end(), ',', ' ');
            std::istringstream is(t);
            int x;
            while (is >> x) vals.push_back(x);
        } else {
            for (char c : s) {
                if (c < '1' || c > '9') throw DomainError("Permutation: bad character in '" + s + "'");
                vals.push_back(c - '0');
            }
        }
        if (vals.empty()) throw DomainError("Permutation: empty string");
        return Permutation(std::move(vals));
    }

  private:
    std::vector<int> v_;
};

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (int x : p.values()) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
        return h;
    }
};

// std("x_1 ... x_n"): the unique permutation in the same relative order.
template <typename T>
Permutation standardize(const std::vector<T>& xs) {
    if (xs.empty()) throw DomainError("standardize: empty input");
    std::vector<int> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return xs[a] < xs[b]; });
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (!(xs[idx[i - 1]] < xs[idx[i]]))
            throw DomainError("standardize: entries not pairwise distinct");
    std::vector<int> out(xs.size());
    for (std::size_t r = 0; r < idx.size(); ++r) out[idx[r]] = static_cast<int>(r) + 1;
    return Permutation(std::move(out), Permutation::unchecked_t{});
}

// pat_I(sigma) = std((sigma(i))_{i in I}), I a strictly increasing 1-based index set.
inline Permutation pat_at(const Permutation& sigma, const std::vector<int>& indices) {
    if (indices.empty()) throw DomainError("pat_at: empty index set");
    std::vector<int> vals;
    vals.reserve(indices.size());
    int prev = 0;
    for (int i : indices) {
        if (i < 1 || i > sigma.size()) throw DomainError("pat_at: index out of range");
        if (i <= prev) throw DomainError("pat_at: indices not strictly increasing");
        prev = i;
        vals.push_back(sigma(i));
    }
    return standardize(vals);
}

inline Permutation pat_window(const Permutation& sigma, int from, int len) {
    std::vector<int> idx(len);
    std::iota(idx.begin(), idx.end(), from);
    return pat_at(sigma, idx);
}

// Number of intervals of |pi| positions inducing pi. Windows compared by
// rank equivalence; no standardization allocated per window.
inline int c_occ(const Permutation& pi, const Permutation& sigma) {
    int h = pi.size(), n = sigma.size();
    if (h > n) return 0;
    int count = 0;
    for (int start = 1; start + h - 1 <= n; ++start) {
        bool ok = true;
        for (int i = 1; i < h && ok; ++i)
            for (int j = 0; j < i && ok; ++j)
                if ((sigma(start + i) < sigma(start + j)) != (pi(i + 1) < pi(j + 1))) ok = false;
        if (ok) ++count;
    }
    return count;
}

// Occurrence test (classical containment). DFS over positions with a
// feasibility prune; intended for oracle-scale patterns (|pi| <= 4).
inline bool contains(const Permutation& pi, const Permutation& sigma) {
    int k = pi.size(), n = sigma.size();
    if (k > n) return false;
    std::vector<int> chosen; // values chosen so far
    chosen.reserve(k);
    std::function<bool(int, int)> dfs = [&](int pos, int from) -> bool {
        if (pos == k) return true;
        for (int i = from; i <= n - (k - pos) + 1; ++i) {
            int val = sigma(i);
            bool ok = true;
            for (int j = 0; j < pos && ok; ++j)
                if ((val < chosen[j]) != (pi(pos + 1) < pi(j + 1))) ok = false;
            if (!ok) continue;
            chosen.push_back(val);
            if (dfs(pos + 1, i + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return dfs(0, 1);
}

// The two generalized patterns of the barred families plus the classical kind.
struct GeneralizedPattern {
    enum class Kind { classical, barred_2_31, barred_2_odd_31 };
    Kind kind = Kind::classical;
    Permutation pattern; // meaningful for classical only

    static GeneralizedPattern classical(Permutation p) {
        return {Kind::classical, std::move(p)};
    }
    static GeneralizedPattern barred231() { return {Kind::barred_2_31, {}}; }
    static GeneralizedPattern barredOdd231() { return {Kind::barred_2_odd_31, {}}; }
};

// Count of j < i with sigma(i) > sigma(j) > sigma(i+1), for the descent at i.
inline int descent_witnesses(const Permutation& s, int i) {
    int cnt = 0;
    for (int j = 1; j < i; ++j)
        if (s(i) > s(j) && s(j) > s(i + 1)) ++cnt;
    return cnt;
}

inline bool satisfies(const Permutation& sigma, const GeneralizedPattern& g) {
    switch (g.kind) {
        case GeneralizedPattern::Kind::classical:
            return !contains(g.pattern, sigma);
        case GeneralizedPattern::Kind::barred_2_31:
            for (int i = 1; i < sigma.size(); ++i)
                if (sigma(i) > sigma(i + 1) && descent_witnesses(sigma, i) < 1) return false;
            return true;
        case GeneralizedPattern::Kind::barred_2_odd_31:
            for (int i = 1; i < sigma.size(); ++i)
                if (sigma(i) > sigma(i + 1) && descent_witnesses(sigma, i) % 2 == 0) return false;
            return true;
    }
    return false;
}

// sigma^{*m}: append a new final value equal to m, shifting values >= m up.
inline Permutation append_final(const Permutation& sigma, int m) {
    int n = sigma.size();
    if (m < 1 || m > n + 1) throw DomainError("append_final: site out of range");
    std::vector<int> out;
    out.reserve(n + 1);
    for (int x : sigma.values()) out.push_back(x >= m ? x + 1 : x);
    out.push_back(m);
    return Permutation(std::move(out), Permutation::unchecked_t{});
}

} // namespace gentree

#endif
