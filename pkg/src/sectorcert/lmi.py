"""Block LMI assembly, conic feasibility oracle, and independent verification.

For a closed-loop vertex M = A + B K Psi and decay rate tau, the certificate
inequality in unknowns (P, chi) is

    W(P, chi) = [ M' P + P M + tau P    P D ]
                [ (P D)'              -chi I ]   strictly negative definite,

together with P > gamma I > 0. One common (P, chi, gamma) must satisfy every
vertex of an interval simultaneously.

The solve normalizes the homogeneous degree of freedom with P >= I (or
P >= gamma_floor I when a floor is requested) and demands a margin
proportional to lambda_max(P): solutions scaled to any size then pass the
norm-relative eigenvalue checks in verify() with two orders of magnitude to
spare. Quality solves run two stages, first minimizing chi (the disturbance
energy multiplier that directly weakens the downstream initial-set radius),
then minimizing lambda_max(P) at essentially that chi.
"""

import itertools
import warnings
from dataclasses import dataclass

import cvxpy as cp
import numpy as np

from .errors import Infeasible, InvalidParameter, NumericalFailure, VertexBudgetExceeded
from .model import closed_loop_matrix

VERTEX_BUDGET = 2 ** 16
VERIFY_TOL = 1e-7
MARGIN_COEFF = 1e-5
CHI_RELAX = 1.05
SOLVERS = ("CLARABEL", "SCS")

warnings.filterwarnings("ignore", message="Solution may be inaccurate")


@dataclass(frozen=True)
class VertexLMI:
    """Data of the inequality at one polytope vertex."""

    closed_loop: np.ndarray
    disturbance: np.ndarray
    tau: float

    def __post_init__(self):
        if self.tau <= 0:
            raise InvalidParameter(f"tau must be positive, got {self.tau}")

    @property
    def n(self):
        return self.closed_loop.shape[0]

    @property
    def l(self):
        return self.disturbance.shape[1]


@dataclass(frozen=True)
class LMISolution:
    """A verified certificate (P, chi, gamma) with its achieved margin."""

    p: np.ndarray
    chi: float
    gamma: float
    margin: float


@dataclass(frozen=True)
class SolveOptions:
    """Knobs for solve_feasibility; defaults give the two-stage quality solve."""

    objective: str = "quality"  # "quality" (min chi, then min |P|) or "pnorm"
    margin_coeff: float = MARGIN_COEFF
    chi_cap: float = None
    gamma_floor: float = None
    literal_tau_block: bool = False
    chi_fixed: float = None  # pin chi to a constant (supersedes the tau block)
    verify_tol: float = VERIFY_TOL


_SOLUTION_LOG = []


def solution_log():
    """All (vertices, solution) pairs returned since the last clear."""
    return list(_SOLUTION_LOG)


def clear_solution_log():
    _SOLUTION_LOG.clear()


def vertex_set(rho_prev, rho_cur, n, mode, budget=VERTEX_BUDGET):
    """Slope assignments at the interval corners.

    Componentwise mode enumerates all 2**n corner combinations; scalar mode
    needs only the two endpoint multiples of the identity. A degenerate
    interval (rho_prev == rho_cur) collapses to the single point assignment.
    """
    if rho_prev > rho_cur:
        raise InvalidParameter(f"need rho_prev <= rho_cur, got ({rho_prev}, {rho_cur})")
    if rho_prev == rho_cur:
        return [np.full(n, float(rho_prev))]
    if mode == "scalar":
        return [np.full(n, float(rho_prev)), np.full(n, float(rho_cur))]
    if mode != "componentwise":
        raise InvalidParameter(f"unknown vertex mode {mode!r}")
    if 2 ** n > budget:
        raise VertexBudgetExceeded(f"2**{n} vertices exceed the budget {budget}")
    return [np.array(c, dtype=float) for c in itertools.product((rho_prev, rho_cur), repeat=n)]


def assemble(plant, gain, psi, tau):
    """VertexLMI for one slope assignment."""
    return VertexLMI(closed_loop_matrix(plant, gain, psi), plant.d, float(tau))


def assemble_block(vertex, p, chi):
    """Numeric block matrix W(P, chi) for the given vertex."""
    m, d = vertex.closed_loop, vertex.disturbance
    top = m.T @ p + p @ m + vertex.tau * p
    pd = p @ d
    w = np.block([[top, pd], [pd.T, -chi * np.eye(vertex.l)]])
    return 0.5 * (w + w.T)


def verify(vertex, sol, tol=VERIFY_TOL):
    """Solver-independent eigenvalue check of one solution at one vertex.

    All four conditions are scaled by the 2-norm of P, which keeps the check
    invariant under the joint rescaling (cP, c chi, c gamma) and independent
    of how large the solver chose chi:
        lambda_max(W)           <= -tol * |P|
        lambda_min(P - gamma I) >= -tol * |P|
        lambda_min(P)           >=  tol * |P|
        |P - P'|                <=  tol * |P|
    """
    p, chi, gamma = sol.p, sol.chi, sol.gamma
    pnorm = np.linalg.norm(p, 2)
    if pnorm == 0.0 or not np.all(np.isfinite(p)):
        return False
    if np.linalg.norm(p - p.T, 2) > tol * pnorm:
        return False
    psym = 0.5 * (p + p.T)
    eig_p = np.linalg.eigvalsh(psym)
    if eig_p[0] < tol * pnorm:
        return False
    if eig_p[0] - gamma < -tol * pnorm:
        return False
    w = assemble_block(vertex, psym, chi)
    if np.linalg.eigvalsh(w)[-1] > -tol * pnorm:
        return False
    return True


def _check_shared(vertices):
    if not vertices:
        raise InvalidParameter("empty vertex list")
    n, l, tau = vertices[0].n, vertices[0].l, vertices[0].tau
    for v in vertices[1:]:
        if (v.n, v.l) != (n, l) or v.tau != tau:
            raise InvalidParameter("vertices must share (n, l, tau)")
    return n, l, tau


def _run_solver(problem, solver):
    if solver == "SCS":
        problem.solve(solver="SCS", eps_abs=1e-9, eps_rel=1e-9, max_iters=200000)
    else:
        problem.solve(solver=solver)
    return problem.status


def _solve_shared(vertices, options):
    n, l, tau = _check_shared(vertices)
    opts = options or SolveOptions()
    floor = 1.0 if opts.gamma_floor is None else float(opts.gamma_floor)

    p = cp.Variable((n, n), symmetric=True)
    t_p = cp.Variable(nonneg=True)
    margin = opts.margin_coeff * t_p
    if opts.chi_fixed is not None:
        chi = None
        chi_expr = float(opts.chi_fixed)
    elif opts.literal_tau_block:
        chi = None
        chi_expr = tau
    else:
        chi = cp.Variable(nonneg=True)
        chi_expr = chi

    def constraints(extra_chi_cap=None):
        cons = [p >> floor * np.eye(n), t_p * np.eye(n) >> p]
        if chi is not None and opts.chi_cap is not None:
            cons.append(chi <= opts.chi_cap)
        if chi is not None and extra_chi_cap is not None:
            cons.append(chi <= extra_chi_cap)
        for v in vertices:
            m = v.closed_loop
            w = cp.bmat(
                [[m.T @ p + p @ m + tau * p, p @ v.disturbance],
                 [v.disturbance.T @ p, -chi_expr * np.eye(l)]]
            )
            cons.append(w << -margin * np.eye(n + l))
        return cons

    def attempt(objective, cons):
        problem = cp.Problem(objective, cons)
        infeasible_seen = False
        for solver in SOLVERS:
            try:
                status = _run_solver(problem, solver)
            except cp.SolverError:
                continue
            if status == "infeasible":
                infeasible_seen = True
                break
            if status in ("optimal", "optimal_inaccurate") and p.value is not None:
                return p.value, (chi_expr if chi is None else float(chi.value)), None
        return None, None, ("infeasible" if infeasible_seen else "failed")

    if chi is not None and opts.objective == "quality":
        p_val, chi_val, failure = attempt(cp.Minimize(chi), constraints())
        if failure == "infeasible":
            raise Infeasible("no (P, chi) satisfies all vertices at the requested margin")
        if failure is None:
            # stage 2: shrink |P| while keeping chi essentially minimal
            p2, chi2, fail2 = attempt(
                cp.Minimize(t_p), constraints(extra_chi_cap=CHI_RELAX * chi_val + 1e-12)
            )
            if fail2 is None:
                p_val, chi_val = p2, chi2
        else:
            raise NumericalFailure("all solvers failed without an infeasibility certificate")
    else:
        p_val, chi_val, failure = attempt(cp.Minimize(t_p), constraints())
        if failure == "infeasible":
            raise Infeasible("no (P, chi) satisfies all vertices at the requested margin")
        if failure is not None:
            raise NumericalFailure("all solvers failed without an infeasibility certificate")

    p_val = 0.5 * (p_val + p_val.T)
    gamma = float(np.linalg.eigvalsh(p_val)[0])
    w_max = max(float(np.linalg.eigvalsh(assemble_block(v, p_val, chi_val))[-1]) for v in vertices)
    sol = LMISolution(p=p_val, chi=float(chi_val), gamma=gamma, margin=-w_max)
    for v in vertices:
        if not verify(v, sol, opts.verify_tol):
            raise NumericalFailure("solver output failed independent eigenvalue verification")
    _SOLUTION_LOG.append((tuple(vertices), sol))
    return sol


def solve_feasibility(vertices, shared_unknowns=True, options=None):
    """Solve the interval feasibility problem.

    With shared_unknowns (the certification case) one (P, chi, gamma) must
    hold at every vertex and a single verified LMISolution is returned. With
    shared_unknowns=False each vertex is solved independently and a list is
    returned. Raises Infeasible when a solver certifies infeasibility and
    NumericalFailure when no solver produced a verified answer.
    """
    if shared_unknowns:
        return _solve_shared(list(vertices), options)
    return [_solve_shared([v], options) for v in vertices]
