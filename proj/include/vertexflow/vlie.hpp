#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <vertexflow/zhu.hpp>

namespace vertexflow {

// a_n: the image of t^n (x) a.
struct ModeSymbol {
    BasisVector vector;
    std::int64_t index = 0;

    friend bool operator==(const ModeSymbol &, const ModeSymbol &) = default;
    friend auto operator<=>(const ModeSymbol &a, const ModeSymbol &b)
    {
        if (auto c = a.vector <=> b.vector; c != 0) return c;
        return a.index <=> b.index;
    }
};

class LieElement {
public:
    using TermMap = std::map<ModeSymbol, GaussRational>;

    LieElement() = default;
    LieElement(const ModeSymbol &s, GaussRational c = GaussRational(1)) { add(s, c); }
    // t^n (x) v for a vector v
    static LieElement lift(const GradedVector &v, std::int64_t n);

    const TermMap &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    void add(const ModeSymbol &s, const GaussRational &c);
    void axpy(const GaussRational &c, const LieElement &o);

    LieElement &operator+=(const LieElement &o)
    {
        axpy(GaussRational(1), o);
        return *this;
    }
    LieElement &operator-=(const LieElement &o)
    {
        axpy(GaussRational(-1), o);
        return *this;
    }
    friend LieElement operator+(LieElement a, const LieElement &b) { return a += b; }
    friend LieElement operator-(LieElement a, const LieElement &b) { return a -= b; }
    friend LieElement operator*(const GaussRational &c, const LieElement &a)
    {
        LieElement out;
        out.axpy(c, a);
        return out;
    }
    friend bool operator==(const LieElement &a, const LieElement &b) { return a.terms_ == b.terms_; }

private:
    TermMap terms_;
};

enum class DegClass { Plus, Zero, Minus };
std::string to_string(DegClass c);
DegClass deg_classify(const GaussRational &deg);

// Normal forms modulo the relations (Ta)_n = -n a_{n-1}. Symbols whose vector has
// Re weight above d_gen are out of range (TruncationExceeded). Per (deg, momentum) block the
// relations are row reduced with columns in decreasing weight, so normal forms are
// supported on a fixed complement of T V.
class VLie {
public:
    VLie(ModeEngine &engine, ConformalDatum datum, Rational d_gen);

    ModeEngine &engine() const { return *engine_; }
    const ConformalDatum &datum() const { return datum_; }
    const Rational &d_gen() const { return d_gen_; }

    GaussRational weight(const BasisVector &b) const;
    GaussRational deg(const ModeSymbol &s) const;
    DegClass classify(const ModeSymbol &s) const { return deg_classify(deg(s)); }
    // Class of a nonzero element homogeneous in deg; nullopt for zero or mixed elements.
    std::optional<DegClass> classify(const LieElement &x) const;

    LieElement canonical(const LieElement &x) const;
    // Borcherds commutator sum on raw representatives, without normalizing.
    LieElement bracket_raw(const LieElement &x, const LieElement &y) const;
    LieElement bracket(const LieElement &x, const LieElement &y) const { return canonical(bracket_raw(x, y)); }
    // (Tc)_n + n c_{n-1}, which is zero in the quotient.
    LieElement relation(const BasisVector &c, std::int64_t n) const;

    // Basis vectors of V with Re weight <= w.
    std::vector<BasisVector> basis(const Rational &w) const;

private:
    struct Block {
        std::vector<ModeSymbol> columns;
        std::map<ModeSymbol, int> index;
        RowReducer reducer{0};
    };
    const Block &block(const GaussRational &deg, const LatticePoint &p) const;

    ModeEngine *engine_;
    ConformalDatum datum_;
    Rational d_gen_;
    std::vector<BasisVector> basis_;
    std::map<BasisVector, GaussRational> weights_;
    mutable std::map<std::pair<GaussRational, LatticePoint>, Block> blocks_;
};

struct KernelReport {
    Rational d;
    std::size_t kernel_dim = 0;     // {a in V^0_{<=d} : a_{|a|-1} = 0}
    std::size_t image_dim = 0;      // (T+L)V^0 intersected with V_{<=d}
    std::size_t sum_dim = 0;        // dimension of their sum
    bool equal() const { return kernel_dim == image_dim && sum_dim == kernel_dim; }
};
KernelReport kernel_check(const VLie &lie, const Rational &d);

struct NonClosureWitness {
    LieElement x, y, bracket;
    DegClass x_class = DegClass::Plus, y_class = DegClass::Plus;
    std::optional<DegClass> bracket_class;
    // both inputs are in the minus class and the bracket is a nonzero zero-class element
    bool exhibits() const
    {
        return x_class == DegClass::Minus && y_class == DegClass::Minus && bracket_class == DegClass::Zero;
    }
};
// Searches the exponential symbols (e^beta)_n, (e^-beta)_m over small lattice vectors.
std::optional<NonClosureWitness> non_closure_witness(const VLie &lie, const Rational &max_weight = Rational(2));

// phi_zero: phi[x,y] - (a*b - b*a) in the span for zero-class pairs a_{|a|-1}, b_{|b|-1};
// phi_minus: the residue certificate for minus-class pairs whose bracket is zero-class.
std::vector<IdentityReport> phi_check(const VLie &lie, const ZhuContext &ctx, const OVSpan &span,
                                      const Rational &pair_weight = Rational(2));

// Sampling helpers used by the property suite.
struct LieSampleReport {
    std::size_t antisymmetry_tested = 0, antisymmetry_passes = 0;
    std::size_t jacobi_tested = 0, jacobi_passes = 0;
    std::size_t deg_tested = 0, deg_passes = 0;
    bool ok() const
    {
        return antisymmetry_passes == antisymmetry_tested && jacobi_passes == jacobi_tested && deg_passes == deg_tested;
    }
};
LieSampleReport bracket_samples(const VLie &lie, std::size_t pairs, std::size_t triples, unsigned seed,
                                const Rational &pair_weight = Rational(3), const Rational &triple_weight = Rational(2));

} // namespace vertexflow
