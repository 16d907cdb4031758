/* C interface for the slip/leak friction Stokes solver.
 *
 * All functions returning sf_status set a thread-local message retrievable
 * with sf_last_error() on failure. Handles are created and destroyed in
 * matching pairs; a solution keeps its problem's data alive internally, so
 * the problem handle may be destroyed first.
 */
#ifndef SFSTOKES_H
#define SFSTOKES_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status {
    SF_OK = 0,
    SF_ERR_INVALID_ARGUMENT = 1, /* bad value, bad pairing, non-nested levels */
    SF_ERR_SINGULAR_SYSTEM = 2,  /* factorization or residual check failed */
    SF_ERR_NO_CONVERGENCE = 3,   /* iteration hit max_iter */
    SF_ERR_IO = 4,               /* file could not be written */
    SF_ERR_INTERNAL = 5
} sf_status;

typedef enum sf_bc {
    SF_BC_SLIP = 0, /* tangential friction condition on the top side */
    SF_BC_LEAK = 1  /* normal friction condition on the top side */
} sf_bc;

typedef enum sf_gauge {
    SF_GAUGE_AUTO = 0,      /* mean-zero for slip, full pressure space for leak */
    SF_GAUGE_MEAN_ZERO = 1,
    SF_GAUGE_FULL = 2
} sf_gauge;

typedef struct sf_problem sf_problem;   /* mesh + assembled, factorized operators */
typedef struct sf_solution sf_solution; /* converged iterate + diagnostics */
typedef struct sf_study sf_study;       /* mesh-refinement error table */

/* Message for the most recent failure on this thread; never NULL. */
const char* sf_last_error(void);

/* ---- problem setup ----
 * n is the grid refinement (n x n cells, n >= 2); nu the viscosity (> 0).
 * The load is the built-in manufactured body force. */
sf_status sf_problem_create(int n, sf_bc bc, double nu, sf_gauge gauge, sf_problem** out);
void sf_problem_destroy(sf_problem* p);

int sf_problem_grid(const sf_problem* p);            /* n */
int sf_problem_velocity_dofs(const sf_problem* p);   /* free scalar dofs after boundary elimination */
int sf_problem_pressure_dofs(const sf_problem* p);
int sf_problem_multiplier_dofs(const sf_problem* p); /* interior trace nodes */
double sf_problem_mesh_size(const sf_problem* p);    /* longest edge */
sf_status sf_problem_write_mesh(const sf_problem* p, const char* path);

/* ---- iterative solve ---- */
typedef struct sf_options {
    double g;           /* constant friction threshold, > 0 */
    double rho;         /* multiplier step size, > 0 */
    double lambda_init; /* constant initial multiplier, clipped to [-1, 1] */
    double tol;         /* velocity-increment stopping tolerance (H1 norm) */
    int max_iter;
} sf_options;

/* g = 1.0, rho = 1.0, lambda_init = 0.0, tol = 1e-5, max_iter = 1000 */
void sf_options_default(sf_options* opt);

sf_status sf_solve(const sf_problem* p, const sf_options* opt, sf_solution** out);
void sf_solution_destroy(sf_solution* s);

/* ---- solution queries ---- */
int sf_solution_iterations(const sf_solution* s);
double sf_solution_final_increment(const sf_solution* s);
double sf_solution_fixed_point_residual(const sf_solution* s); /* ||Proj(l+rho u)-l|| */
double sf_solution_divergence_max(const sf_solution* s);       /* max |(B u)_q| */
double sf_solution_energy_residual(const sf_solution* s);      /* relative */
double sf_solution_max_trace_speed(const sf_solution* s); /* friction component on top side */
int sf_solution_active_nodes(const sf_solution* s);       /* multiplier values at +-1 */

/* Multiplier on the top side: count = number of trace nodes (2n+1, endpoints
 * included and exactly zero). x/lambda receive node coordinates and values. */
int sf_solution_multiplier_count(const sf_solution* s);
sf_status sf_solution_multiplier(const sf_solution* s, double* x, double* lambda, int count);
/* Value at the trace vertex nearest to x (vertices only, not midpoints). */
double sf_solution_multiplier_at(const sf_solution* s, double x);

/* Point evaluation anywhere in the closed unit square. */
sf_status sf_solution_velocity_at(const sf_solution* s, double x, double y,
                                  double* u1, double* u2);
sf_status sf_solution_pressure_at(const sf_solution* s, double x, double y, double* value);

/* ---- output files ---- */
sf_status sf_solution_write_vtk(const sf_solution* s, const char* path);
sf_status sf_solution_write_multiplier_csv(const sf_solution* s, const char* path);
sf_status sf_solution_write_log_csv(const sf_solution* s, const char* path);

/* ---- error norms (meshes must be nested: fine n divisible by coarse n) ---- */
sf_status sf_h1_velocity_error(const sf_solution* coarse, const sf_solution* fine,
                               double* out);
/* match_at_origin != 0 shifts the coarse pressure to agree at the corner (0,0). */
sf_status sf_l2_pressure_error(const sf_solution* coarse, const sf_solution* fine,
                               int match_at_origin, double* out);

/* ---- mesh-refinement study ---- */
typedef struct sf_study_row {
    int n;
    double h;
    double h1_error;
    double h1_rate; /* NaN on the first row */
    double l2_error;
    double l2_rate; /* NaN on the first row */
    int k_itr;
} sf_study_row;

/* levels must be strictly increasing, each dividing ref_level. */
sf_status sf_study_run(sf_bc bc, double g, double rho, double lambda_init, double tol,
                       int max_iter, double nu, const int* levels, int n_levels,
                       int ref_level, sf_study** out);
void sf_study_destroy(sf_study* st);
int sf_study_rows(const sf_study* st);
sf_status sf_study_row_get(const sf_study* st, int i, sf_study_row* out);
int sf_study_ref_iterations(const sf_study* st);
/* Least-squares slopes of log(error) against log(1/n). */
sf_status sf_study_slopes(const sf_study* st, double* h1_slope, double* l2_slope);
sf_status sf_study_write_csv(const sf_study* st, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* SFSTOKES_H */
