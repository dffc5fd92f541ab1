#include "plbc/code/pbch.hpp"

#include <stdexcept>

#include <json.hpp>

namespace plbc::code {

Gf2Poly bch_generator_polynomial(const BinaryField& field, unsigned t) {
    const std::size_t n = field.order();
    std::vector<Gf2Poly> factors;
    for (unsigned i = 1; i <= 2 * t; ++i)
        factors.push_back(field.minimal_polynomial(field.alpha_power(i)));
    Gf2Poly g = poly_lcm(factors);
    if (std::size_t(g.degree()) > n)
        throw std::invalid_argument("BCH generator degree exceeds code length");
    return g;
}

namespace {

Gf2Poly reciprocal(const Gf2Poly& p) {
    std::vector<std::uint8_t> rev(p.coeffs().rbegin(), p.coeffs().rend());
    return Gf2Poly(std::move(rev));
}

// n x d matrix whose column j holds the coefficients of x^j * p(x).
BitMatrix cyclic_shift_columns(std::size_t n, const Gf2Poly& p, std::size_t count) {
    BitMatrix out(n, count);
    for (std::size_t j = 0; j < count; ++j)
        for (std::size_t i = 0; i <= std::size_t(p.degree()); ++i)
            if (p.coeff(i)) out.set(i + j, j, true);
    return out;
}

// Incremental GF(2) eliminator used to complete a basis deterministically.
class SpanBuilder {
public:
    // Returns true (and absorbs the vector) when v is outside the current span.
    bool try_add(BitVec v) {
        for (const auto& [pivot, row] : basis_)
            if (v.get(pivot)) v ^= row;
        if (v.is_zero()) return false;
        std::size_t pivot = v.ones().front();
        basis_.emplace_back(pivot, std::move(v));
        return true;
    }

private:
    std::vector<std::pair<std::size_t, BitVec>> basis_;
};

}  // namespace

PartitionedCode build_pbch(unsigned m, std::size_t k, std::size_t l) {
    const BinaryField field(m);
    const std::size_t n = field.order();
    if (k > n || l > n - k) throw std::invalid_argument("invalid (k, l) for this length");
    const std::size_t r = n - k - l;
    if (l % m != 0 || r % m != 0)
        throw std::invalid_argument("l and r must be multiples of the field degree");

    PartitionedCode code;
    code.n = n;
    code.k = k;
    code.l = l;
    code.r = r;
    code.m = m;
    code.primitive_poly = field.primitive_poly();

    const unsigned t0_design = unsigned(l / m);
    const unsigned t1_design = unsigned(r / m);
    code.d0 = l == 0 ? 0 : 2 * t0_design + 1;
    code.d1 = r == 0 ? 0 : 2 * t1_design + 1;
    code.t0 = code.d0 == 0 ? 0 : (code.d0 - 1) / 2;
    code.t1 = code.d1 == 0 ? 0 : (code.d1 - 1) / 2;

    const Gf2Poly g0_poly = bch_generator_polynomial(field, t0_design);
    const Gf2Poly g1_poly = bch_generator_polynomial(field, t1_design);
    if (std::size_t(g0_poly.degree()) != l)
        throw std::runtime_error("masking-layer BCH redundancy does not equal l "
                                 "(cyclotomic coset collision); parameters m=" +
                                 std::to_string(m) + " l=" + std::to_string(l));
    if (std::size_t(g1_poly.degree()) != r)
        throw std::runtime_error("error-layer BCH redundancy does not equal r "
                                 "(cyclotomic coset collision); parameters m=" +
                                 std::to_string(m) + " r=" + std::to_string(r));

    const Gf2Poly x_n_minus_1 = Gf2Poly::x_power(n) + Gf2Poly::one();
    // C0 is the dual of the [n, n-l] BCH code: generated by the reciprocal of
    // h0 = (x^n - 1) / g0. Shifts of that generator give a deterministic G0.
    const Gf2Poly h0_recip = reciprocal(x_n_minus_1.divmod(g0_poly).first);
    code.g0 = cyclic_shift_columns(n, h0_recip, l);

    // H~^T rows span the dual of C = [n, n-r] BCH, likewise via shifts.
    const Gf2Poly h1_recip = reciprocal(x_n_minus_1.divmod(g1_poly).first);
    code.h_tilde = cyclic_shift_columns(n, h1_recip, r);

    code.g0_t = code.g0.transposed();
    code.h_tilde_t = code.h_tilde.transposed();

    if (!(code.h_tilde_t * code.g0).is_zero())
        throw std::runtime_error("nesting violation: C0 is not contained in C for m=" +
                                 std::to_string(m) + " k=" + std::to_string(k) +
                                 " l=" + std::to_string(l));
    if (code.g0.rank() != l) throw std::runtime_error("rank(G0) < l");

    // Complete colspace(G0) to a basis of C = null(H~^T) with shifts of g1,
    // which span C; keep the first k shifts independent of G0.
    SpanBuilder span;
    for (std::size_t j = 0; j < l; ++j) span.try_add(code.g0.column(j));
    const BitMatrix c_basis = cyclic_shift_columns(n, g1_poly, k + l);
    std::vector<BitVec> g1_cols;
    for (std::size_t j = 0; j < k + l && g1_cols.size() < k; ++j) {
        BitVec cand = c_basis.column(j);
        if (span.try_add(cand)) g1_cols.push_back(std::move(cand));
    }
    if (g1_cols.size() != k) throw std::runtime_error("failed to complete G1 basis");
    code.g1 = BitMatrix(n, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i : g1_cols[j].ones()) code.g1.set(i, j, true);

    // G1~ solves [G1 G0]^T X = [I_k; 0].
    const BitMatrix g_tilde_t = code.g1.augmented(code.g0).transposed();
    BitMatrix rhs(k + l, k);
    for (std::size_t i = 0; i < k; ++i) rhs.set(i, i, true);
    auto solved = g_tilde_t.solve_consistent(rhs);
    if (!solved) throw std::runtime_error("message inverse system inconsistent");
    code.g1_inv = std::move(*solved);

    verify_code_invariants(code);
    return code;
}

void verify_code_invariants(const PartitionedCode& code) {
    const BitMatrix g1_inv_t = code.g1_inv.transposed();
    if (g1_inv_t * code.g1 != BitMatrix::identity(code.k))
        throw std::runtime_error("invariant failed: G1~^T G1 != I");
    if (code.l > 0 && !(g1_inv_t * code.g0).is_zero())
        throw std::runtime_error("invariant failed: G1~^T G0 != 0");
    if (code.r > 0) {
        if (!(code.h_tilde_t * code.g1).is_zero())
            throw std::runtime_error("invariant failed: H~^T G1 != 0");
        if (!(code.h_tilde_t * code.g0).is_zero())
            throw std::runtime_error("invariant failed: H~^T G0 != 0");
    }
    if (code.g1.augmented(code.g0).rank() != code.k + code.l)
        throw std::runtime_error("invariant failed: rank([G1 G0]) != k + l");
}

namespace {

nlohmann::json matrix_to_json(const BitMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i).to_hex());
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"hex_rows", rows}};
}

BitMatrix matrix_from_json(const nlohmann::json& j) {
    const std::size_t rows = j.at("rows"), cols = j.at("cols");
    BitMatrix m(rows, cols);
    const auto& hex_rows = j.at("hex_rows");
    if (hex_rows.size() != rows) throw std::invalid_argument("row count mismatch in JSON");
    for (std::size_t i = 0; i < rows; ++i)
        m.set_row(i, BitVec::from_hex(cols, hex_rows[i].get<std::string>()));
    return m;
}

}  // namespace

std::string PartitionedCode::to_json() const {
    nlohmann::json j = {
        {"n", n},
        {"k", k},
        {"l", l},
        {"r", r},
        {"m", m},
        {"primitive_poly", primitive_poly},
        {"d0", d0},
        {"d1", d1},
        {"G1", matrix_to_json(g1)},
        {"G0", matrix_to_json(g0)},
        {"H_tilde", matrix_to_json(h_tilde)},
        {"G1_inv", matrix_to_json(g1_inv)},
    };
    return j.dump(2);
}

PartitionedCode PartitionedCode::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    PartitionedCode code;
    code.n = j.at("n");
    code.k = j.at("k");
    code.l = j.at("l");
    code.r = j.at("r");
    code.m = j.at("m");
    code.primitive_poly = j.at("primitive_poly");
    code.d0 = j.at("d0");
    code.d1 = j.at("d1");
    code.t0 = code.d0 == 0 ? 0 : (code.d0 - 1) / 2;
    code.t1 = code.d1 == 0 ? 0 : (code.d1 - 1) / 2;
    code.g1 = matrix_from_json(j.at("G1"));
    code.g0 = matrix_from_json(j.at("G0"));
    code.h_tilde = matrix_from_json(j.at("H_tilde"));
    code.g1_inv = matrix_from_json(j.at("G1_inv"));
    code.g0_t = code.g0.transposed();
    code.h_tilde_t = code.h_tilde.transposed();
    verify_code_invariants(code);
    return code;
}

}  // namespace plbc::code
