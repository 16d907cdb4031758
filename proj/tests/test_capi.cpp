#include "doctest.h"

#include "sfstokes.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

sf_options opts(double g, double rho, double tol = 1e-5) {
    sf_options o;
    sf_options_default(&o);
    o.g = g;
    o.rho = rho;
    o.tol = tol;
    return o;
}

struct ProblemHandle {
    sf_problem* p = nullptr;
    ~ProblemHandle() { sf_problem_destroy(p); }
};
struct SolutionHandle {
    sf_solution* s = nullptr;
    ~SolutionHandle() { sf_solution_destroy(s); }
};
struct StudyHandle {
    sf_study* st = nullptr;
    ~StudyHandle() { sf_study_destroy(st); }
};

} // namespace

TEST_CASE("problem creation and queries") {
    ProblemHandle h;
    REQUIRE(sf_problem_create(6, SF_BC_SLIP, 1.0, SF_GAUGE_AUTO, &h.p) == SF_OK);
    REQUIRE(h.p != nullptr);
    CHECK(sf_problem_grid(h.p) == 6);
    CHECK(std::abs(sf_problem_mesh_size(h.p) - std::sqrt(2.0) / 6.0) <= 1e-15);
    // 13x13 P2 nodes, boundary nodes eliminated except the friction component
    // of the 11 interior top-side nodes: 2*169 - 2*(48-11) - 11 = 253.
    CHECK(sf_problem_velocity_dofs(h.p) == 253);
    CHECK(sf_problem_pressure_dofs(h.p) == 49);
    CHECK(sf_problem_multiplier_dofs(h.p) == 11);
    CHECK(sf_problem_write_mesh(h.p, "capi_mesh_tmp.txt") == SF_OK);
}

TEST_CASE("default options") {
    sf_options o;
    std::memset(&o, 0xff, sizeof(o));
    sf_options_default(&o);
    CHECK(o.g == 1.0);
    CHECK(o.rho == 1.0);
    CHECK(o.lambda_init == 0.0);
    CHECK(o.tol == 1e-5);
    CHECK(o.max_iter == 1000);
}

TEST_CASE("solve, diagnostics, and multiplier access") {
    ProblemHandle h;
    REQUIRE(sf_problem_create(6, SF_BC_SLIP, 1.0, SF_GAUGE_AUTO, &h.p) == SF_OK);
    const sf_options o = opts(0.8, 50.0);
    SolutionHandle s;
    REQUIRE(sf_solve(h.p, &o, &s.s) == SF_OK);

    CHECK(sf_solution_iterations(s.s) > 0);
    CHECK(sf_solution_final_increment(s.s) <= 1e-5);
    CHECK(sf_solution_fixed_point_residual(s.s) <= 1e-4);
    CHECK(sf_solution_divergence_max(s.s) <= 1e-9);
    CHECK(sf_solution_energy_residual(s.s) <= 1e-4);
    CHECK(sf_solution_max_trace_speed(s.s) > 0.0);
    CHECK(sf_solution_active_nodes(s.s) >= 0);
    CHECK(sf_solution_active_nodes(s.s) <= 11);

    const int count = sf_solution_multiplier_count(s.s);
    CHECK(count == 13);
    std::vector<double> x(count), lam(count);
    REQUIRE(sf_solution_multiplier(s.s, x.data(), lam.data(), count) == SF_OK);
    CHECK(x.front() == 0.0);
    CHECK(x.back() == 1.0);
    CHECK(lam.front() == 0.0);
    CHECK(lam.back() == 0.0);
    for (double v : lam)
        CHECK(std::abs(v) <= 1.0 + 1e-14);
    CHECK(sf_solution_multiplier(s.s, x.data(), lam.data(), count - 1) ==
          SF_ERR_INVALID_ARGUMENT);
    CHECK(std::string(sf_last_error()).size() > 0);

    // Nearest-vertex lookup (vertices sit at even trace indices).
    CHECK(sf_solution_multiplier_at(s.s, 0.5) == lam[6]);
    CHECK(sf_solution_multiplier_at(s.s, 1.0 / 3.0) == lam[4]);
    CHECK(sf_solution_multiplier_at(s.s, -5.0) == lam[0]);
    CHECK(sf_solution_multiplier_at(s.s, 5.0) == lam[12]);

    double u1 = -1.0, u2 = -1.0, pv = 0.0;
    REQUIRE(sf_solution_velocity_at(s.s, 0.0, 0.0, &u1, &u2) == SF_OK);
    CHECK(u1 == 0.0);
    CHECK(u2 == 0.0);
    REQUIRE(sf_solution_velocity_at(s.s, 0.5, 0.5, &u1, &u2) == SF_OK);
    CHECK(std::isfinite(u1));
    CHECK(std::isfinite(u2));
    REQUIRE(sf_solution_pressure_at(s.s, 0.5, 0.5, &pv) == SF_OK);
    CHECK(std::isfinite(pv));
    CHECK(sf_solution_velocity_at(s.s, 1.5, 0.5, &u1, &u2) == SF_ERR_INVALID_ARGUMENT);

    CHECK(sf_solution_write_vtk(s.s, "capi_sol_tmp.vtk") == SF_OK);
    CHECK(sf_solution_write_multiplier_csv(s.s, "capi_mult_tmp.csv") == SF_OK);
    CHECK(sf_solution_write_log_csv(s.s, "capi_log_tmp.csv") == SF_OK);
    CHECK(sf_solution_write_vtk(s.s, "/nonexistent_dir/x.vtk") == SF_ERR_IO);
}

TEST_CASE("solutions outlive their problem handle and repeat bitwise") {
    sf_problem* p = nullptr;
    REQUIRE(sf_problem_create(4, SF_BC_LEAK, 1.0, SF_GAUGE_AUTO, &p) == SF_OK);
    const sf_options o = opts(1.2, 15.0); // the n=4 mesh needs a smaller stable step

    SolutionHandle a, b;
    REQUIRE(sf_solve(p, &o, &a.s) == SF_OK);
    REQUIRE(sf_solve(p, &o, &b.s) == SF_OK);
    sf_problem_destroy(p); // solution keeps what it needs alive

    CHECK(sf_solution_iterations(a.s) == sf_solution_iterations(b.s));
    const int count = sf_solution_multiplier_count(a.s);
    std::vector<double> xa(count), la(count), xb(count), lb(count);
    REQUIRE(sf_solution_multiplier(a.s, xa.data(), la.data(), count) == SF_OK);
    REQUIRE(sf_solution_multiplier(b.s, xb.data(), lb.data(), count) == SF_OK);
    for (int i = 0; i < count; ++i) {
        CHECK(la[i] == lb[i]);
        CHECK(xa[i] == xb[i]);
    }
    double ua1, ua2, ub1, ub2;
    REQUIRE(sf_solution_velocity_at(a.s, 0.37, 0.91, &ua1, &ua2) == SF_OK);
    REQUIRE(sf_solution_velocity_at(b.s, 0.37, 0.91, &ub1, &ub2) == SF_OK);
    CHECK(ua1 == ub1);
    CHECK(ua2 == ub2);
}

TEST_CASE("status codes for invalid input") {
    sf_problem* p = nullptr;
    CHECK(sf_problem_create(1, SF_BC_SLIP, 1.0, SF_GAUGE_AUTO, &p) ==
          SF_ERR_INVALID_ARGUMENT);
    CHECK(p == nullptr);
    CHECK(std::string(sf_last_error()).size() > 0);
    CHECK(sf_problem_create(4, SF_BC_SLIP, 0.0, SF_GAUGE_AUTO, &p) ==
          SF_ERR_INVALID_ARGUMENT);
    CHECK(sf_problem_create(4, SF_BC_SLIP, -1.0, SF_GAUGE_AUTO, &p) ==
          SF_ERR_INVALID_ARGUMENT);
    CHECK(sf_problem_create(4, SF_BC_SLIP, 1.0, SF_GAUGE_AUTO, nullptr) ==
          SF_ERR_INVALID_ARGUMENT);

    // The slip problem with the full pressure space is singular (constants in
    // the kernel); detected at factorization time.
    CHECK(sf_problem_create(4, SF_BC_SLIP, 1.0, SF_GAUGE_FULL, &p) ==
          SF_ERR_SINGULAR_SYSTEM);

    // The leak problem with a gauge row constructs but refuses to iterate.
    ProblemHandle bad;
    REQUIRE(sf_problem_create(4, SF_BC_LEAK, 1.0, SF_GAUGE_MEAN_ZERO, &bad.p) == SF_OK);
    sf_options o = opts(1.2, 30.0);
    sf_solution* s = nullptr;
    CHECK(sf_solve(bad.p, &o, &s) == SF_ERR_INVALID_ARGUMENT);
    CHECK(s == nullptr);

    ProblemHandle good;
    REQUIRE(sf_problem_create(4, SF_BC_SLIP, 1.0, SF_GAUGE_AUTO, &good.p) == SF_OK);
    o = opts(0.0, 50.0);
    CHECK(sf_solve(good.p, &o, &s) == SF_ERR_INVALID_ARGUMENT);
    o = opts(0.8, 0.0);
    CHECK(sf_solve(good.p, &o, &s) == SF_ERR_INVALID_ARGUMENT);
    o = opts(0.8, 50.0);
    o.max_iter = 1;
    CHECK(sf_solve(good.p, &o, &s) == SF_ERR_NO_CONVERGENCE);
    CHECK(sf_solve(good.p, nullptr, &s) == SF_ERR_INVALID_ARGUMENT);
    CHECK(sf_solve(good.p, &o, nullptr) == SF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("error norms between solutions") {
    ProblemHandle p2, p4, p6;
    REQUIRE(sf_problem_create(2, SF_BC_SLIP, 1.0, SF_GAUGE_AUTO, &p2.p) == SF_OK);
    REQUIRE(sf_problem_create(4, SF_BC_SLIP, 1.0, SF_GAUGE_AUTO, &p4.p) == SF_OK);
    REQUIRE(sf_problem_create(6, SF_BC_SLIP, 1.0, SF_GAUGE_AUTO, &p6.p) == SF_OK);
    const sf_options o = opts(0.8, 50.0);
    SolutionHandle s2, s4, s6;
    REQUIRE(sf_solve(p2.p, &o, &s2.s) == SF_OK);
    REQUIRE(sf_solve(p4.p, &o, &s4.s) == SF_OK);
    REQUIRE(sf_solve(p6.p, &o, &s6.s) == SF_OK);

    double err = -1.0;
    REQUIRE(sf_h1_velocity_error(s2.s, s4.s, &err) == SF_OK);
    CHECK(err > 0.0);
    CHECK(sf_h1_velocity_error(s4.s, s6.s, &err) == SF_ERR_INVALID_ARGUMENT); // 6 % 4 != 0
    REQUIRE(sf_l2_pressure_error(s2.s, s4.s, 1, &err) == SF_OK);
    CHECK(err > 0.0);
    REQUIRE(sf_l2_pressure_error(s2.s, s4.s, 0, &err) == SF_OK);
    CHECK(err > 0.0);
}

TEST_CASE("refinement study") {
    const int levels[2] = {2, 4};
    StudyHandle st;
    REQUIRE(sf_study_run(SF_BC_SLIP, 0.8, 50.0, 0.0, 1e-5, 1000, 1.0, levels, 2, 8,
                         &st.st) == SF_OK);
    REQUIRE(st.st != nullptr);
    CHECK(sf_study_rows(st.st) == 2);
    CHECK(sf_study_ref_iterations(st.st) > 0);

    sf_study_row r0, r1;
    REQUIRE(sf_study_row_get(st.st, 0, &r0) == SF_OK);
    REQUIRE(sf_study_row_get(st.st, 1, &r1) == SF_OK);
    CHECK(r0.n == 2);
    CHECK(r1.n == 4);
    CHECK(r0.h1_error > r1.h1_error);
    CHECK(r0.l2_error > r1.l2_error);
    CHECK(std::isnan(r0.h1_rate));
    CHECK(std::isnan(r0.l2_rate));
    CHECK(std::isfinite(r1.h1_rate));
    CHECK(r0.k_itr > 0);
    CHECK(sf_study_row_get(st.st, 2, &r1) == SF_ERR_INVALID_ARGUMENT);

    double sh1 = 0.0, sl2 = 0.0;
    REQUIRE(sf_study_slopes(st.st, &sh1, &sl2) == SF_OK);
    CHECK(std::isfinite(sh1));
    CHECK(std::isfinite(sl2));
    CHECK(sf_study_write_csv(st.st, "capi_study_tmp.csv") == SF_OK);

    sf_study* bad = nullptr;
    const int non_nested[2] = {2, 3};
    CHECK(sf_study_run(SF_BC_SLIP, 0.8, 50.0, 0.0, 1e-5, 1000, 1.0, non_nested, 2, 8,
                       &bad) == SF_ERR_INVALID_ARGUMENT);
    CHECK(bad == nullptr);
    CHECK(sf_study_run(SF_BC_SLIP, 0.8, 50.0, 0.0, 1e-5, 1000, 1.0, levels, 0, 8,
                       &bad) == SF_ERR_INVALID_ARGUMENT);
    CHECK(sf_study_run(SF_BC_SLIP, 0.8, 50.0, 0.0, 1e-5, 1000, 1.0, nullptr, 2, 8,
                       &bad) == SF_ERR_INVALID_ARGUMENT);
}
