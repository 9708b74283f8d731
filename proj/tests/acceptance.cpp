// Acceptance suite: one pass/fail line per criterion, exact tolerances.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "subprocess.hpp"
#include "wittlift/expr.hpp"
#include "wittlift/lifting.hpp"
#include "wittlift/report_json.hpp"

using namespace wittlift;
using nlohmann::json;
using testutil::run_command;

#ifndef WITTLIFT_CLI_PATH
#define WITTLIFT_CLI_PATH "wittlift"
#endif

namespace {

const std::string cli = WITTLIFT_CLI_PATH;

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::filesystem::path write_problem(const std::string& name, const json& j) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << j.dump();
    return path;
}

Presentation make_pres(std::uint32_t p, std::uint32_t m, std::uint32_t cap,
                       std::vector<std::string> vars,
                       const std::vector<std::string>& gens) {
    SeriesContext ctx(RingParams(p), m, cap, std::move(vars));
    std::vector<TruncatedSeries> series;
    for (const auto& g : gens)
        series.push_back(parse_series_expr(g, ctx));
    return Presentation(ctx, std::move(series));
}

// criterion 1 -------------------------------------------------------------

bool criterion_deligne(std::string& detail) {
    Check c;
    struct Expected {
        std::uint32_t p, m;
        std::uint64_t modulus, p2lam, coeff;
    };
    // closed forms: modulus p^{2p+1}, p^2 lambda^{p-1} = p^{2p}, and the
    // obstruction coefficient (p-1)! p^{2p} mod p^{2p+1}
    std::vector<Expected> expected = {{3, 7, 2187, 729, 1458},
                                      {2, 5, 32, 16, 16},
                                      {5, 11, 48828125, 9765625, 39062500}};
    for (const auto& e : expected) {
        auto start = std::chrono::steady_clock::now();
        DeligneReport rep = deligne_example(e.p);
        double elapsed = seconds_since(start);
        std::string tag = "p=" + std::to_string(e.p);
        c.require(rep.m == e.m, tag + " wrong m");
        c.require(rep.modulus == e.modulus, tag + " wrong modulus");
        c.require(rep.p_lambda_p == 0, tag + " p*lambda^p != 0");
        c.require(rep.p2_lambda_pm1 == e.p2lam, tag + " p^2*lambda^(p-1) mismatch");
        c.require(rep.s_power_zero, tag + " s^p != 0");
        c.require(rep.rprime_power_zero, tag + " (r')^p != 0");
        c.require(rep.r_coefficient == e.coeff, tag + " r^p coefficient mismatch");
        c.require(rep.x_independent, tag + " r^p depends on x");
        c.require(rep.t1_refuted, tag + " T^1 cross-check failed");
        c.require(elapsed < 5.0, tag + " took " + std::to_string(elapsed) + "s");
    }
    detail = c.detail.str();
    return c.ok;
}

// criterion 2 -------------------------------------------------------------

bool criterion_pd_axioms(std::string& detail) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20010901);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        RingParams params(p);
        for (std::uint32_t m = 1; m <= 5 && c.ok; ++m)
            for (std::uint32_t d = 1; d <= 6 && c.ok; ++d) {
                RingPtr ring = make_ring(RingDescriptor::pd(params, m, d));
                std::uint64_t unit_mod = ring->coord_modulus(0);
                for (int trial = 0; trial < 200 && c.ok; ++trial) {
                    std::vector<std::uint64_t> coords(ring->dim());
                    for (std::size_t i = 0; i < ring->dim(); ++i)
                        coords[i] = rng() % ring->coord_modulus(i);
                    coords[0] -= coords[0] % p;
                    RingElem x = ring->from_coords(coords);
                    for (std::size_t i = 0; i < ring->dim(); ++i)
                        coords[i] = rng() % ring->coord_modulus(i);
                    coords[0] -= coords[0] % p;
                    RingElem y = ring->from_coords(coords);

                    std::uint64_t n = rng() % 7;
                    auto dx = divided_power_vector(x, n);
                    auto dy = divided_power_vector(y, n);

                    auto oracle = oracles::oracle_gamma(x, n);
                    c.require(oracle.has_value(), "oracle produced a non p-integral value");
                    c.require(dx[n] == *oracle, "gamma^n disagrees with the rational oracle");

                    std::uint64_t nfact =
                        oracles::big_mod(oracles::big_factorial(n), unit_mod);
                    c.require(dx[n].scaled(nfact) == x.pow(n), "(n!) gamma^n(x) != x^n");

                    RingElem sum_side = ring->zero();
                    for (std::uint64_t i = 0; i <= n; ++i)
                        sum_side = sum_side + dx[i] * dy[n - i];
                    c.require(gamma(x + y, n) == sum_side, "addition law failed");

                    std::uint64_t lambda = rng() % unit_mod;
                    std::uint64_t ln = 1;
                    for (std::uint64_t i = 0; i < n; ++i)
                        ln = mul_mod(ln, lambda, unit_mod);
                    c.require(gamma(x.scaled(lambda), n) == dx[n].scaled(ln),
                              "scaling law failed");

                    std::uint64_t a = rng() % 5, b = rng() % 5;
                    c.require(gamma(x, a) * gamma(x, b) ==
                                  gamma(x, a + b).scaled(binomial_mod(p, a + b, a, m).value()),
                              "product law failed");
                }
            }
    }
    double elapsed = seconds_since(start);
    c.require(elapsed < 60.0, "suite took " + std::to_string(elapsed) + "s");
    detail = c.detail.str();
    if (c.ok)
        detail = "3 primes x 30 rings x 200 elements, " + std::to_string(elapsed).substr(0, 4) +
                 "s";
    return c.ok;
}

// criterion 3 -------------------------------------------------------------

bool criterion_lift_oracle(std::string& detail) {
    Check c;
    std::mt19937 rng(424242);
    struct Case {
        Presentation pres;
        TruncationMap trunc;
    };
    std::vector<Case> cases;
    for (std::uint32_t p : {2u, 3u}) {
        RingParams P(p);
        auto pd = [&](std::uint32_t m, std::uint32_t d) { return RingDescriptor::pd(P, m, d); };
        // node and p-torsion presentations are required members of the corpus
        cases.push_back({make_pres(p, 2, 8, {"x", "y"}, {"x*y"}),
                         make_truncation(pd(1, 3), pd(1, 2))});
        cases.push_back({make_pres(p, 2, 8, {"x", "y"}, {"x*y"}),
                         make_truncation(pd(2, 3), pd(2, 2))});
        cases.push_back({make_pres(p, 3, 8, {"x"}, {"p*x"}),
                         make_truncation(RingDescriptor::wm_eps(P, 2),
                                         RingDescriptor::wm_mixed_eps(P, 1))});
        cases.push_back({make_pres(p, 3, 8, {"x"}, {"p*x"}),
                         make_truncation(RingDescriptor::wm(P, 2), RingDescriptor::wm(P, 1))});
        cases.push_back({make_pres(p, 3, 8, {"T"}, {"T^" + std::to_string(p)}),
                         make_truncation(pd(1, 4), pd(1, 3))});
        cases.push_back({make_pres(p, 3, 8, {"T"}, {"T^" + std::to_string(p)}),
                         make_truncation(RingDescriptor::pd_eps(P, 1, 2),
                                         RingDescriptor::pd_eps_quot(P, 1, 2))});
        cases.push_back({make_pres(p, 2, 8, {"x", "y"}, {"x^2 - y^2"}),
                         make_truncation(pd(1, 3), pd(1, 2))});
        cases.push_back(
            {make_pres(p, 3, 8, {"x", "y"}, {"x*y"}),
             make_truncation(RingDescriptor::ramified(P, 1, std::vector<std::uint32_t>{1}, 3),
                             RingDescriptor::ramified(P, 1, std::vector<std::uint32_t>{1}, 2))});
        // random quadratic presentations
        for (int extra = 0; extra < 3; ++extra) {
            std::uint64_t a = rng() % 4, b = rng() % 4, cc = rng() % 4;
            std::string gen = std::to_string(a) + "*x^2 + " + std::to_string(b) +
                              "*x*y + " + std::to_string(cc) + "*y^2 + p*x";
            cases.push_back({make_pres(p, 2, 8, {"x", "y"}, {gen}),
                             make_truncation(pd(1, 3), pd(1, 2))});
        }
    }
    std::size_t problems = 0, refutations = 0;
    for (const auto& cs : cases) {
        c.require(cs.trunc.source()->order() <= 729, "source ring too large for the oracle");
        MaxIdealRange ideal = enumerate_max_ideal(cs.trunc.target());
        std::size_t r = cs.pres.nvars();
        int taken = 0;
        for (int trial = 0; trial < 60 && taken < 6; ++trial) {
            std::vector<RingElem> images;
            for (std::size_t i = 0; i < r; ++i)
                images.push_back(ideal.at(rng() % ideal.size()));
            auto wd = check_well_defined(cs.pres, cs.trunc.target(), images);
            auto* map = std::get_if<AlgebraMap>(&wd);
            if (!map)
                continue;
            ++taken;
            ++problems;
            LiftReport rep = lift_square_zero(LiftProblem{*map, cs.trunc});
            bool oracle = oracles::exhaustive_liftable(cs.pres, cs.trunc, images);
            if (rep.refuted())
                ++refutations;
            c.require(rep.lifted() == oracle && rep.refuted() == !oracle,
                      "verdict disagrees with exhaustive search");
        }
    }
    c.require(problems >= 50, "corpus too small: " + std::to_string(problems));
    c.require(refutations > 0, "corpus contained no refutations");
    detail = c.ok ? std::to_string(problems) + " problems, " + std::to_string(refutations) +
                        " refutations, exact agreement"
                  : c.detail.str();
    return c.ok;
}

// criterion 4 -------------------------------------------------------------

bool criterion_refutation_regressions(std::string& detail) {
    Check c;
    auto probe_json = [&](const json& problem, const std::string& flags,
                          int expected_exit) -> json {
        static int counter = 0;
        auto path = write_problem("wl_acc_" + std::to_string(counter++) + ".json", problem);
        auto res = run_command(cli + " probe " + path.string() + " " + flags + " --json");
        c.require(res.exit_code == expected_exit,
                  "exit " + std::to_string(res.exit_code) + " != " +
                      std::to_string(expected_exit));
        json j;
        try {
            j = json::parse(res.output);
        } catch (...) {
            c.require(false, "unparsable JSON output");
        }
        return j;
    };

    json node3 = {{"p", 3}, {"precision", 5}, {"vars", {"x", "y"}}, {"generators", {"x*y"}}};
    json w = probe_json(node3, "", 2)["report"]["witness"];
    c.require(w["condition"] == "iii" && w["m"] == 1 && w["d"] == 2,
              "node p=3 witness not at (1,2)");

    json node2 = {{"p", 2}, {"precision", 5}, {"vars", {"x", "y"}}, {"generators", {"x*y"}}};
    w = probe_json(node2, "", 2)["report"]["witness"];
    c.require(w["condition"] == "iii" && w["m"] == 2 && w["d"] == 2,
              "node p=2 witness not at (2,2)");

    json ptor = {{"p", 3}, {"precision", 5}, {"vars", {"x"}}, {"generators", {"p*x"}}};
    w = probe_json(ptor, "", 2)["report"]["witness"];
    c.require(w["condition"] == "ii" && w["m"] == 1, "p-torsion witness not at (ii) m=1");

    json cusp = {{"p", 3}, {"precision", 8}, {"vars", {"T"}}, {"generators", {"T^3"}}};
    json first = probe_json(cusp, "--m-max 7 --d-max 4", 2);
    json second = probe_json(cusp, "--m-max 7 --d-max 4", 2);
    c.require(first["report"]["witness"] == second["report"]["witness"],
              "T^p witness is not deterministic");

    detail = c.ok ? "node (1,2)/(2,2), p-torsion (ii,1), T^p refuted deterministically"
                  : c.detail.str();
    return c.ok;
}

// criterion 5 -------------------------------------------------------------

bool criterion_non_refutation(std::string& detail) {
    Check c;
    std::vector<json> smooth = {
        {{"p", 3}, {"precision", 5}, {"vars", {"x"}}, {"generators", json::array()}},
        {{"p", 3}, {"precision", 5}, {"vars", {"x", "y"}}, {"generators", json::array()}},
        {{"p", 3}, {"precision", 5}, {"vars", {"x", "y"}}, {"generators", {"y + x^2 + x*y"}}},
    };
    int counter = 0;
    for (const auto& problem : smooth) {
        auto path = write_problem("wl_smooth_" + std::to_string(counter++) + ".json", problem);
        auto start = std::chrono::steady_clock::now();
        auto res = run_command(cli + " probe " + path.string());
        double elapsed = seconds_since(start);
        c.require(res.exit_code == 0,
                  "smooth case " + std::to_string(counter - 1) + " exited " +
                      std::to_string(res.exit_code));
        c.require(elapsed < 30.0, "smooth case took " + std::to_string(elapsed) + "s");
    }
    detail = c.ok ? "free (r=1,2) and eliminable presentations exit 0 over the full grid"
                  : c.detail.str();
    return c.ok;
}

// criterion 6 -------------------------------------------------------------

bool criterion_structure(std::string& detail) {
    Check c;
    for (std::uint32_t p : {2u, 3u}) {
        RingParams P(p);
        for (std::uint32_t m = 1; m <= 3; ++m)
            for (std::uint32_t d = 1; d <= 3; ++d) {
                RingPtr pd = make_ring(RingDescriptor::pd(P, m, d));
                c.require(enumerate_all_elements(pd).size() ==
                              oracles::big_pow(p, std::uint64_t(m) * d),
                          "|PD| != p^{md}");
            }
        for (std::uint32_t n = 1; n <= 3; ++n)
            for (std::uint32_t d = 1; d <= 3; ++d) {
                RingPtr ram = make_ring(
                    RingDescriptor::ramified(P, n, std::vector<std::uint32_t>{1}, d));
                c.require(enumerate_all_elements(ram).size() == oracles::big_pow(p, d),
                          "|Ramified| != p^d");
            }

        // every supported truncation pair passes the homomorphism test
        std::vector<std::pair<RingDescriptor, RingDescriptor>> pairs;
        for (std::uint32_t m = 1; m <= 3; ++m)
            for (std::uint32_t d = 1; d <= 3; ++d) {
                pairs.push_back({RingDescriptor::pd(P, m, d + 1), RingDescriptor::pd(P, m, d)});
                pairs.push_back(
                    {RingDescriptor::pd_eps(P, m, d), RingDescriptor::pd_eps_quot(P, m, d)});
                if (d >= 2) {
                    pairs.push_back({RingDescriptor::pd_eps_quot(P, m, d),
                                     RingDescriptor::pd_eps(P, m, d - 1)});
                    pairs.push_back(
                        {RingDescriptor::pd(P, m + 1, d), RingDescriptor::pd(P, m, d)});
                }
                pairs.push_back({RingDescriptor::wm(P, m + 1), RingDescriptor::wm(P, m)});
                pairs.push_back(
                    {RingDescriptor::wm_eps(P, m + 1), RingDescriptor::wm_mixed_eps(P, m)});
                pairs.push_back({RingDescriptor::ramified(P, 1, std::vector<std::uint32_t>{1}, d + 1),
                                 RingDescriptor::ramified(P, 1, std::vector<std::uint32_t>{1}, d)});
            }
        for (const auto& [src, dst] : pairs) {
            try {
                TruncationMap t = make_truncation(src, dst);
                const RingPtr& S = t.source();
                for (std::size_t i = 0; i < S->dim(); ++i)
                    for (std::size_t j = 0; j < S->dim(); ++j)
                        c.require(t.apply(S->basis_element(i) * S->basis_element(j)) ==
                                      t.apply(S->basis_element(i)) *
                                          t.apply(S->basis_element(j)),
                                  "hom test failed for " + src.name() + " -> " + dst.name());
            } catch (const Error& e) {
                c.require(false, std::string("truncation failed: ") + e.what());
            }
        }

        // T -> T + eps commutes with eps -> 0 and the plain truncation
        for (std::uint32_t m = 1; m <= 4; ++m)
            for (std::uint32_t d = 1; d <= 5; ++d) {
                RingHom h = shift_substitution(P, m, d);
                TruncationMap tr = make_truncation(RingDescriptor::pd(P, m, d + 1),
                                                   RingDescriptor::pd(P, m, d));
                for (std::size_t i = 0; i < h.source->dim(); ++i) {
                    RingElem shifted = h.apply(h.source->basis_element(i));
                    std::vector<std::uint64_t> unit(tr.target()->dim(), 0);
                    for (std::size_t j = 0; j < h.target->dim(); ++j)
                        if (!h.target->basis()[j].eps && shifted.coords()[j] != 0)
                            unit[h.target->basis()[j].gamma_index] = shifted.coords()[j];
                    c.require(RingElem(tr.target(), unit) ==
                                  tr.apply(tr.source()->basis_element(i)),
                              "shift square does not commute at m=" + std::to_string(m) +
                                  " d=" + std::to_string(d));
                }
            }
    }
    detail = c.ok ? "orders, truncation homomorphisms and the shift square all verified"
                  : c.detail.str();
    return c.ok;
}

// criterion 7 -------------------------------------------------------------

bool criterion_linear_algebra(std::string& detail) {
    Check c;
    std::mt19937 rng(777);
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> moduli = {
        {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 1}, {3, 2},
        {3, 3}, {3, 4}, {5, 1}, {5, 2}, {7, 1}, {7, 2}};
    std::size_t count = 0;
    for (int iter = 0; iter < 520; ++iter) {
        auto [p, m] = moduli[rng() % moduli.size()];
        std::uint64_t pm = prime_power(p, m);
        std::size_t cols = 1 + rng() % 3;
        std::size_t rows = 1 + rng() % 4;
        std::vector<std::vector<std::uint64_t>> A(rows, std::vector<std::uint64_t>(cols));
        std::vector<std::uint64_t> b(rows);
        for (auto& row : A)
            for (auto& x : row)
                x = rng() % pm;
        for (auto& x : b)
            x = rng() % pm;
        ++count;

        LinearOutcome out = solve_linear_raw(p, m, A, b);
        oracles::ExhaustiveLinear ex = oracles::exhaustive_solve(pm, A, b);
        if (const auto* sol = std::get_if<LinearSolution>(&out)) {
            c.require(ex.solvable, "solver found a solution where none exists");
            for (std::size_t i = 0; i < rows && c.ok; ++i) {
                unsigned __int128 acc = 0;
                for (std::size_t j = 0; j < cols; ++j)
                    acc += static_cast<unsigned __int128>(A[i][j]) * sol->x[j];
                c.require(static_cast<std::uint64_t>(acc % pm) == b[i],
                          "returned solution fails the system");
            }
            for (const auto& k : sol->kernel_basis)
                for (std::size_t i = 0; i < rows && c.ok; ++i) {
                    unsigned __int128 acc = 0;
                    for (std::size_t j = 0; j < cols; ++j)
                        acc += static_cast<unsigned __int128>(A[i][j]) * k[j];
                    c.require(static_cast<std::uint64_t>(acc % pm) == 0,
                              "kernel generator is not in the kernel");
                }
            if (pm <= 9) {
                auto span = oracles::span_of(pm, cols, sol->kernel_basis);
                c.require(span == ex.kernel, "kernel span disagrees with exhaustive kernel");
            }
        } else {
            c.require(!ex.solvable, "solver reported NoSolution on a solvable system");
        }
        if (!c.ok)
            break;
    }
    detail = c.ok ? std::to_string(count) + " systems, exact agreement with exhaustive search"
                  : c.detail.str();
    return c.ok;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> run;
    };
    std::vector<Criterion> criteria = {
        {"1: counterexample chains for p = 2, 3, 5", criterion_deligne},
        {"2: divided-power axiom suite vs rational oracle", criterion_pd_axioms},
        {"3: lift engine vs exhaustive kernel search", criterion_lift_oracle},
        {"4: refutation regressions via the CLI", criterion_refutation_regressions},
        {"5: non-refutation regressions via the CLI", criterion_non_refutation},
        {"6: ring structure sanity", criterion_structure},
        {"7: linear algebra over Z/p^m vs exhaustive search", criterion_linear_algebra},
    };
    bool all_ok = true;
    for (auto& criterion : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        all_ok = all_ok && ok;
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.name;
        if (!detail.empty())
            std::cout << " -- " << detail;
        std::cout << "\n";
    }
    return all_ok ? 0 : 1;
}
