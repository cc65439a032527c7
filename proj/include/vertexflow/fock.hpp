#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <vertexflow/gauss_rational.hpp>
#include <vertexflow/lattice.hpp>

namespace vertexflow {

// One Heisenberg creation factor b_index(-mode), index 0-based.
struct FockFactor {
    int mode = 1;
    int index = 0;
    friend bool operator==(const FockFactor &, const FockFactor &) = default;
};

// Product of creation operators in canonical order: mode descending, then index ascending.
class FockMonomial {
public:
    FockMonomial() = default;
    // Sorts into canonical order. Throws std::invalid_argument on a non-positive mode.
    explicit FockMonomial(std::vector<FockFactor> factors);

    const std::vector<FockFactor> &factors() const noexcept { return factors_; }
    bool empty() const noexcept { return factors_.empty(); }
    int degree() const noexcept { return degree_; }

    FockMonomial with(FockFactor f) const;
    // Removes the factor at position pos.
    FockMonomial without(std::size_t pos) const;

    friend bool operator==(const FockMonomial &a, const FockMonomial &b) { return a.factors_ == b.factors_; }
    friend std::strong_ordering operator<=>(const FockMonomial &a, const FockMonomial &b);

private:
    std::vector<FockFactor> factors_;
    int degree_ = 0;
};

struct BasisVector {
    FockMonomial fock;
    LatticePoint point;

    friend bool operator==(const BasisVector &, const BasisVector &) = default;
    friend std::strong_ordering operator<=>(const BasisVector &a, const BasisVector &b);
};

struct BasisHash {
    std::size_t operator()(const BasisVector &b) const noexcept;
};

// Sparse exact combination of basis vectors, no zero coefficients.
class GradedVector {
public:
    using TermMap = std::map<BasisVector, GaussRational>;

    GradedVector() = default;
    GradedVector(const BasisVector &b, GaussRational c = GaussRational(1));

    const TermMap &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    GaussRational coeff(const BasisVector &b) const;

    void add(const BasisVector &b, const GaussRational &c);
    void add(BasisVector &&b, const GaussRational &c);
    // this += c * other
    void axpy(const GaussRational &c, const GradedVector &other);

    GradedVector &operator+=(const GradedVector &o)
    {
        axpy(GaussRational(1), o);
        return *this;
    }
    GradedVector &operator-=(const GradedVector &o)
    {
        axpy(GaussRational(-1), o);
        return *this;
    }
    GradedVector &operator*=(const GaussRational &c);

    friend GradedVector operator+(GradedVector a, const GradedVector &b) { return a += b; }
    friend GradedVector operator-(GradedVector a, const GradedVector &b) { return a -= b; }
    friend GradedVector operator*(const GaussRational &c, GradedVector a) { return a *= c; }
    friend bool operator==(const GradedVector &a, const GradedVector &b) { return a.terms_ == b.terms_; }

    // Terms whose key satisfies pred.
    GradedVector filter(const std::function<bool(const BasisVector &)> &pred) const;

private:
    TermMap terms_;
};

// L(0)-weight: Fock degree plus <gamma,gamma>/2.
Rational l0_weight(const EvenLattice &lattice, const BasisVector &b);

// Result weights are checked against max_weight (L(0)-weight). Overflow raises
// TruncationExceeded unless lossy, in which case the terms are dropped.
struct Truncation {
    Rational max_weight;
    bool lossy = false;
};

// All Fock monomials of the given degree in `rank` colours, in canonical order.
std::vector<FockMonomial> fock_monomials(std::size_t rank, int degree);

// Basis of the module on `coset` (0 is V_L itself) with L(0)-weight <= max_weight,
// sorted by weight, then point, then monomial.
std::vector<BasisVector> enumerate_basis(const EvenLattice &lattice, std::size_t coset, const Rational &max_weight);

// Basis vectors with Re(L(0) - s<h,gamma>) <= max_weight where h is a Cartan vector
// given by coefficients in b_1..b_k. Sorted by that real part, then point, then monomial.
std::vector<BasisVector> enumerate_basis_shifted(const EvenLattice &lattice, std::size_t coset,
                                                 const GaussVector &h, const Rational &max_weight);

// Vertex operator modes on V_L and its modules, with memoized descendant recursion.
// Not thread-safe; use one engine per thread.
class ModeEngine {
public:
    explicit ModeEngine(const EvenLattice &lattice);

    const EvenLattice &lattice() const noexcept { return lattice_; }

    BasisVector vacuum() const;
    BasisVector exp_vector(const IntVector &alpha) const; // e^alpha
    // b_i(-1) 1
    BasisVector heisenberg_vector(std::size_t i) const;
    // h(-1)1 for h = sum c_i b_i
    GradedVector heisenberg_state(const GaussVector &h) const;
    // (1/2) sum (G^{-1})_{ij} b_i(-1) b_j(-1) 1
    GradedVector omega() const;
    Rational central_charge() const { return Rational(static_cast<long>(lattice_.rank())); }

    // b_i(n) v
    GradedVector heis_mode(std::size_t i, std::int64_t n, const GradedVector &v) const;
    // h(n) v for h = sum c_i b_i
    GradedVector heis_mode(const GaussVector &h, std::int64_t n, const GradedVector &v) const;
    // Mode n of Y(e^alpha, z), alpha in L.
    GradedVector exp_mode(const IntVector &alpha, std::int64_t n, const GradedVector &v,
                          const std::optional<Truncation> &trunc = std::nullopt);
    // a(n) b for a in V_L, b in any module. Bilinear.
    GradedVector mode(const GradedVector &a, std::int64_t n, const GradedVector &b,
                      const std::optional<Truncation> &trunc = std::nullopt);
    // L(n) v via the normal-ordered quadratic form.
    GradedVector virasoro(std::int64_t n, const GradedVector &v) const;
    // T v = v(-2)1 for v in V_L.
    GradedVector translate(const GradedVector &v, const std::optional<Truncation> &trunc = std::nullopt);

    // [a(m), b(n)] v = sum_i binom(m,i) (a(i)b)(m+n-i) v on every v in `test`.
    bool commutator_check(const GradedVector &a, const GradedVector &b, std::int64_t m, std::int64_t n,
                          const std::vector<BasisVector> &test);

    std::size_t memo_size() const noexcept { return memo_.size(); }
    void clear_memo() { memo_.clear(); }

private:
    struct Key {
        BasisVector a;
        std::int64_t n;
        BasisVector w;
        friend bool operator==(const Key &, const Key &) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const noexcept;
    };

    const GradedVector &basis_mode(const BasisVector &a, std::int64_t n, const BasisVector &w);
    GradedVector compute_basis_mode(const BasisVector &a, std::int64_t n, const BasisVector &w);
    GradedVector exp_basis_mode(const LatticePoint &beta, std::int64_t n, const BasisVector &w) const;
    void apply_truncation(GradedVector &v, const std::optional<Truncation> &trunc) const;

    EvenLattice lattice_;
    std::unordered_map<Key, GradedVector, KeyHash> memo_;
};

} // namespace vertexflow
