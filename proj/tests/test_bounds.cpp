#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gme/bounds.hpp"
#include "gme/spectral.hpp"

TEST_CASE("general concentration bound", "[bounds]") {
    CHECK_THAT(gme::thm_main_c2_bound(2, 2, 0.5),
               Catch::Matchers::WithinAbs(5.545177444479562, 1e-12));
    // (1-eps)^k blows the bound up near eps = 1.
    CHECK(gme::thm_main_c2_bound(2, 2, 0.99) > 100.0 * gme::thm_main_c2_bound(2, 2, 0.5));
    CHECK_THROWS_AS(gme::thm_main_c2_bound(1, 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(gme::thm_main_c2_bound(2, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gme::thm_main_c2_bound(2, 2, 1.0), std::invalid_argument);
}

TEST_CASE("existence lower bound for general tensors", "[bounds]") {
    CHECK_THAT(gme::cor_main_lower(2, 21),
               Catch::Matchers::WithinAbs(12.001466631769954, 1e-12));
    CHECK_FALSE(gme::cor_main_valid(20));
    CHECK(gme::cor_main_valid(21));
    for (int n : {2, 3, 4})
        for (int k = 21; k <= 60; ++k)
            CHECK(gme::cor_main_lower(n, k) <= gme::upper_bound_E(n, k));
    CHECK_THROWS_AS(gme::cor_main_lower(2, 1), std::invalid_argument);
}

TEST_CASE("fraction threshold", "[bounds]") {
    CHECK_THAT(gme::fraction_threshold(10),
               Catch::Matchers::WithinAbs(2.474817432412916, 1e-12));
    CHECK_FALSE(gme::fraction_valid(3));
    CHECK(gme::fraction_valid(4));
    for (int k = 4; k <= 30; ++k)
        CHECK(gme::fraction_threshold(k) < gme::upper_bound_E(2, k));
}

TEST_CASE("symmetric concentration bound", "[bounds]") {
    CHECK_THAT(gme::thm_sym_c2_bound(2, 4, 0.1),
               Catch::Matchers::WithinAbs(1.082219863528484, 1e-12));
    // ln(4/eps) divergence as eps -> 0.
    CHECK(gme::thm_sym_c2_bound(2, 4, 1e-9) > gme::thm_sym_c2_bound(2, 4, 1e-3));
    CHECK(gme::thm_sym_c2_bound(2, 4, 1e-3) > std::log(4e3) / 4.0);
}

TEST_CASE("symmetric existence bounds", "[bounds]") {
    CHECK_THAT(gme::sym_qubit_lower(100),
               Catch::Matchers::WithinAbs(3.427548839380813, 1e-12));
    for (int m = 1; m <= 10000; ++m) {
        CHECK(gme::sym_qubit_lower(m) <= gme::upper_bound_E_sym(2, m));
        CHECK(std::abs(gme::sym_main_lower(2, m) - gme::sym_qubit_lower(m)) <= 2.0);
    }
}

TEST_CASE("symmetric validity threshold scan", "[bounds]") {
    CHECK(gme::sym_main_m_star(2) == 142);
    CHECK(gme::sym_main_m_star(3) == 13);
    CHECK(gme::sym_main_m_star(4) == 7);
    CHECK_FALSE(gme::sym_main_probe(2, 141));
    CHECK(gme::sym_main_probe(2, 142));
    // The probe keeps holding past the threshold.
    for (int m = 142; m <= 2000; ++m) CHECK(gme::sym_main_probe(2, m));
}

TEST_CASE("proof chain audit: existence bound", "[bounds]") {
    for (int n : {2, 3, 4})
        for (int k = 21; k <= 200; ++k) {
            const auto rep = gme::verify_chain_cor_main(n, k);
            CHECK(rep.valid_range);
            CHECK(rep.all_hold);
        }

    const auto bad = gme::verify_chain_cor_main(2, 20);
    CHECK_FALSE(bad.valid_range);
    CHECK_FALSE(bad.all_hold);
    bool ln_floor_failed = false;
    for (const auto& st : bad.steps)
        if (st.name == "ln k floor") ln_floor_failed = !st.holds;
    CHECK(ln_floor_failed);
}

TEST_CASE("proof chain audit: fraction threshold", "[bounds]") {
    for (int k = 4; k <= 200; ++k) {
        const auto rep = gme::verify_chain_fraction(k);
        CHECK(rep.valid_range);
        CHECK(rep.all_hold);
    }
    const auto bad = gme::verify_chain_fraction(3);
    CHECK_FALSE(bad.valid_range);
    CHECK_FALSE(bad.all_hold);
}

TEST_CASE("proof chain audit: symmetric bound", "[bounds]") {
    for (int m = 142; m <= 10000; ++m) CHECK(gme::verify_chain_sym_main(2, m).all_hold);
    for (int m = 13; m <= 300; ++m) CHECK(gme::verify_chain_sym_main(3, m).all_hold);
    for (int m = 7; m <= 100; ++m) CHECK(gme::verify_chain_sym_main(4, m).all_hold);
    const auto bad = gme::verify_chain_sym_main(2, 141);
    CHECK_FALSE(bad.valid_range);
    CHECK_FALSE(bad.all_hold);
}

TEST_CASE("proof chain dispatch", "[bounds]") {
    CHECK(gme::verify_proof_chain("cor_main", 2, 30).which == "cor_main");
    CHECK(gme::verify_proof_chain("fraction", 2, 10).which == "fraction");
    CHECK(gme::verify_proof_chain("sym_main", 2, 500).which == "sym_main");
    CHECK_THROWS_AS(gme::verify_proof_chain("bogus", 2, 10), std::invalid_argument);
}
