#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "gme/tensor.hpp"

using namespace gme;

namespace {

constexpr double kTight = 1e-12;
constexpr double kLoose = 1e-10;

PureTensor random_pure(int n, int k, std::uint64_t seed) {
    SplitMix64 rng(mix64(seed));
    PureTensor p;
    for (int j = 0; j < k; ++j) p.factors.push_back(random_unit_vector(n, rng));
    return p;
}

std::vector<cplx> basis_vector(int n, int i) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    v[static_cast<std::size_t>(i)] = cplx{1.0, 0.0};
    return v;
}

} // namespace

TEST_CASE("inner product is the conjugated coefficient sum", "[tensor]") {
    DenseTensor a(2, 2), b(2, 2);
    a.at({0, 1}) = cplx{1.0, 2.0};
    b.at({0, 1}) = cplx{3.0, -1.0};
    b.at({1, 0}) = cplx{5.0, 0.0};
    // Single overlapping entry: (1+2i) * conj(3-i) = (1+2i)(3+i) = 1+7i.
    const cplx v = inner(a, b);
    CHECK(std::abs(v - cplx{1.0, 7.0}) < kTight);

    // Conjugate linearity in the second slot: <a, i*b> = -i <a, b>.
    DenseTensor bi = b;
    for (auto& c : bi.coeffs) c *= cplx{0.0, 1.0};
    CHECK(std::abs(inner(a, bi) - cplx{0.0, -1.0} * v) < kTight);

    CHECK_THROWS_AS(inner(a, DenseTensor(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(inner(a, DenseTensor(3, 2)), std::invalid_argument);
}

TEST_CASE("inner product of pure tensors factorizes", "[tensor]") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const int n = 2 + static_cast<int>(s % 3);
        PureTensor p = random_pure(n, 3, 1000 + s);
        PureTensor q = random_pure(n, 3, 2000 + s);
        cplx prod{1.0, 0.0};
        for (int j = 0; j < 3; ++j)
            prod *= vec_inner(p.factors[static_cast<std::size_t>(j)],
                              q.factors[static_cast<std::size_t>(j)]);
        const cplx direct = inner(pure_to_dense(p), pure_to_dense(q));
        CHECK(std::abs(direct - prod) < kLoose);
    }
}

TEST_CASE("norm basics", "[tensor]") {
    DenseTensor z(3, 2);
    CHECK(norm(z) == 0.0);

    PureTensor e;
    e.factors = {basis_vector(2, 0), basis_vector(2, 0), basis_vector(2, 0)};
    CHECK(std::abs(norm(pure_to_dense(e)) - 1.0) < kTight);

    // norm^2 equals inner(T, T) for random data.
    DenseTensor t = random_unit_tensor(2, 4, 7);
    CHECK(std::abs(inner(t, t).real() - 1.0) < kTight);
    CHECK(std::abs(inner(t, t).imag()) < kTight);
}

TEST_CASE("pure_to_dense places a single coefficient for basis factors", "[tensor]") {
    PureTensor p;
    p.factors = {basis_vector(2, 1), basis_vector(2, 0), basis_vector(2, 1)};
    DenseTensor d = pure_to_dense(p);
    for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
        const double expect = (i == d.offset({1, 0, 1})) ? 1.0 : 0.0;
        CHECK(std::abs(d.coeffs[i] - cplx{expect, 0.0}) < kTight);
    }
}

TEST_CASE("pure_to_dense norm is the product of factor norms", "[tensor]") {
    SplitMix64 rng(mix64(42));
    PureTensor p;
    double prod = 1.0;
    for (int j = 0; j < 3; ++j) {
        std::vector<cplx> f(3);
        fill_gaussian(f, rng);
        prod *= vec_norm(f);
        p.factors.push_back(std::move(f));
    }
    CHECK(std::abs(norm(pure_to_dense(p)) - prod) < kLoose);

    // A zero factor annihilates the whole tensor.
    p.factors[1].assign(3, cplx{0.0, 0.0});
    CHECK(norm(pure_to_dense(p)) == 0.0);
}

TEST_CASE("eval_pure matches the dense materialization oracle", "[tensor]") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const int n = 2 + static_cast<int>(s % 2);
        const int k = 2 + static_cast<int>(s % 3);
        DenseTensor t = random_unit_tensor(n, k, 300 + s);
        PureTensor p = random_pure(n, k, 400 + s);
        const cplx direct = eval_pure(t, p);
        const cplx oracle = inner(t, pure_to_dense(p));
        CHECK(std::abs(direct - oracle) < kLoose);
    }
}

TEST_CASE("eval_pure at basis factors reads off a coefficient", "[tensor]") {
    DenseTensor t = random_unit_tensor(3, 3, 5);
    PureTensor p;
    p.factors = {basis_vector(3, 2), basis_vector(3, 0), basis_vector(3, 1)};
    CHECK(std::abs(eval_pure(t, p) - t.at({2, 0, 1})) < kTight);

    PureTensor bad = p;
    bad.factors.pop_back();
    CHECK_THROWS_AS(eval_pure(t, bad), std::invalid_argument);
}

TEST_CASE("slice extracts pinned-axis subtensors", "[tensor]") {
    DenseTensor t = random_unit_tensor(2, 3, 11);
    for (int axis = 0; axis < 3; ++axis) {
        // Parseval within slices: sum of squared slice norms is the squared norm.
        double total = 0.0;
        for (int i = 0; i < 2; ++i) {
            DenseTensor s = slice(t, axis, i);
            REQUIRE(s.k == 2);
            total += norm(s) * norm(s);
        }
        CHECK(std::abs(total - 1.0) < kLoose);

        // Bitwise reassembly: every coefficient of t appears in exactly one slice.
        for (int i = 0; i < 2; ++i) {
            DenseTensor s = slice(t, axis, i);
            std::vector<int> idx(3, 0);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    std::vector<int> rest = {a, b};
                    std::vector<int> full;
                    for (int j = 0, r = 0; j < 3; ++j)
                        full.push_back(j == axis ? i : rest[static_cast<std::size_t>(r++)]);
                    CHECK(s.at(rest) == t.at(full));
                }
        }
    }
    CHECK_THROWS_AS(slice(t, 3, 0), std::out_of_range);
    CHECK_THROWS_AS(slice(t, 0, 2), std::out_of_range);
}

TEST_CASE("contract_factor is adjoint to factor insertion", "[tensor]") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const int n = 2 + static_cast<int>(s % 2);
        const int k = 3;
        DenseTensor t = random_unit_tensor(n, k, 500 + s);
        SplitMix64 rng(mix64(600 + s));
        const std::vector<cplx> v = random_unit_vector(n, rng);
        for (int axis = 0; axis < k; ++axis) {
            DenseTensor c = contract_factor(t, axis, v);
            REQUIRE(c.k == k - 1);
            PureTensor rest = random_pure(n, k - 1, 700 + s);
            PureTensor full = rest;
            full.factors.insert(full.factors.begin() + axis, v);
            CHECK(std::abs(eval_pure(c, rest) - eval_pure(t, full)) < kLoose);
            // Contraction against a unit vector cannot grow the norm.
            CHECK(norm(c) <= norm(t) + kTight);
        }
    }
}

TEST_CASE("contract_factor peels one factor off a pure tensor", "[tensor]") {
    SplitMix64 rng(mix64(81));
    const std::vector<cplx> v1 = random_unit_vector(3, rng);
    const std::vector<cplx> v2 = random_unit_vector(3, rng);
    PureTensor p;
    p.factors = {v1, v2};
    DenseTensor c = contract_factor(pure_to_dense(p), 0, v1);
    REQUIRE(c.k == 1);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(c.coeffs[static_cast<std::size_t>(i)] - v2[static_cast<std::size_t>(i)]) <
              kLoose);
}

TEST_CASE("random_unit_tensor is unit, deterministic, and uniform-ish", "[tensor]") {
    DenseTensor a = random_unit_tensor(2, 2, 123);
    DenseTensor b = random_unit_tensor(2, 2, 123);
    DenseTensor c = random_unit_tensor(2, 2, 124);
    CHECK(std::abs(norm(a) - 1.0) < kTight);
    CHECK(a.coeffs == b.coeffs);
    CHECK(a.coeffs != c.coeffs);

    // |first coefficient|^2 averages 1/n^k; Beta(1, n^k - 1) has variance
    // (n^k - 1) / (n^k)^2 / (n^k + 1) = 3/80 for n^k = 4.
    const int draws = 100000;
    double mean = 0.0;
    for (int i = 0; i < draws; ++i)
        mean += std::norm(random_unit_tensor(2, 2, 10000 + static_cast<std::uint64_t>(i)).coeffs[0]);
    mean /= draws;
    const double se = std::sqrt(3.0 / 80.0 / draws);
    CHECK(std::abs(mean - 0.25) < 3.0 * se);
}

TEST_CASE("dense storage budget is enforced", "[tensor]") {
    CHECK_THROWS_AS(DenseTensor(2, 25), std::length_error);
    CHECK_THROWS_AS(dense_size(3, 40), std::length_error);
    CHECK(dense_size(2, 24) == (std::uint64_t{1} << 24));
    CHECK_THROWS_AS(DenseTensor(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(DenseTensor(2, 0), std::invalid_argument);
}
