//! Zero-potential spectra of the equilateral quantum graph with standard
//! conditions at interior vertices.
//!
//! Two independent routes are provided. The closed form multiplies the sine
//! factor `sin(x)^(g−p+r)` with `P(cos x)`, where `P` is the exact pencil
//! determinant and `x = √λ·l`. The direct route scans the determinant of the
//! full `2g × 2g` matrix of vertex conditions. Roots are located on the
//! smallest singular value, which vanishes linearly at every eigenvalue
//! whatever its multiplicity; multiplicity is the numerical nullity.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::charpoly::{dirichlet_poly, sine_exponent};
use crate::error::{Error, Result};
use crate::graph::{BoundaryConfig, Graph};
use crate::linalg::Matrix;
use crate::poly::IntPoly;
use crate::sturm::real_roots;

const TWO_PI: f64 = 2.0 * PI;

/// Direction of every edge, indexed like [`Graph::edges`]. Local coordinates
/// run from 0 at the tail to `l` at the head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrientation {
    arcs: Vec<(usize, usize)>,
}

impl EdgeOrientation {
    /// Checks that each arc is an edge of `g` and that edges touching a
    /// pendant vertex leave it (a single-edge graph may go either way).
    pub fn new(g: &Graph, arcs: Vec<(usize, usize)>) -> Result<EdgeOrientation> {
        if arcs.len() != g.edge_count() {
            return Err(Error::InvalidGraph("one arc per edge required".into()));
        }
        for (&(t, h), &(u, v)) in arcs.iter().zip(g.edges()) {
            if (t.min(h), t.max(h)) != (u, v) {
                return Err(Error::InvalidGraph(format!(
                    "arc {t}->{h} does not match edge {u}-{v}"
                )));
            }
            if g.degree(h) == 1 && g.degree(t) != 1 {
                return Err(Error::InvalidGraph(format!(
                    "arc {t}->{h} points into a pendant vertex"
                )));
            }
        }
        Ok(EdgeOrientation { arcs })
    }

    /// Pendant edges leave their pendant; other edges run from the smaller
    /// index to the larger one.
    pub fn standard(g: &Graph) -> EdgeOrientation {
        Self::with_flips(g, |_| false)
    }

    /// Standard orientation with the interior edges selected by `flip`
    /// reversed.
    pub fn with_flips(g: &Graph, flip: impl Fn(usize) -> bool) -> EdgeOrientation {
        let arcs = g
            .edges()
            .iter()
            .enumerate()
            .map(|(j, &(u, v))| {
                let (du, dv) = (g.degree(u), g.degree(v));
                if dv == 1 && du != 1 {
                    (v, u)
                } else if du == 1 {
                    (u, v)
                } else if flip(j) {
                    (v, u)
                } else {
                    (u, v)
                }
            })
            .collect();
        EdgeOrientation { arcs }
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

/// Values of the edge solutions and their derivatives entering the vertex
/// conditions. Coefficients multiply the two basis solutions of each edge.
struct EndValues {
    /// value at the head: (first basis, second basis)
    value_head: (f64, f64),
    /// derivative at the tail, first basis (second basis has zero slope)
    slope_tail: f64,
    /// derivative at the head
    slope_head: (f64, f64),
}

impl EndValues {
    /// Basis `s = sin(kt)/k`, `c = cos(kt)` with `k = x/l`, as written in
    /// the vertex-condition functionals.
    fn standard(x: f64, l: f64) -> EndValues {
        let k = x / l;
        let (sin, cos) = (libm::sin(x), libm::cos(x));
        EndValues {
            value_head: (sin / k, cos),
            slope_tail: 1.0,
            slope_head: (cos, -k * sin),
        }
    }

    /// `λ → 0` limit of [`EndValues::standard`].
    fn at_zero(l: f64) -> EndValues {
        EndValues {
            value_head: (l, 1.0),
            slope_tail: 1.0,
            slope_head: (1.0, 0.0),
        }
    }

    /// Basis `sin(kt)`, `cos(kt)` with derivative rows divided by `k`: every
    /// entry lies in `[−1, 1]` and depends on `x` alone.
    fn equilibrated(x: f64) -> EndValues {
        let (sin, cos) = (libm::sin(x), libm::cos(x));
        EndValues {
            value_head: (sin, cos),
            slope_tail: 1.0,
            slope_head: (cos, -sin),
        }
    }
}

fn assemble(g: &Graph, b: &BoundaryConfig, orient: &EdgeOrientation, ev: &EndValues) -> Matrix {
    let ne = g.edge_count();
    let mut m = Matrix::zeros(2 * ne);
    // (edge, is_head) for every edge end at each vertex
    let mut ends: Vec<Vec<(usize, bool)>> = alloc::vec![Vec::new(); g.vertex_count()];
    for (j, &(t, h)) in orient.arcs().iter().enumerate() {
        ends[t].push((j, false));
        ends[h].push((j, true));
    }
    let value = |m: &mut Matrix, row: usize, (j, head): (usize, bool), sign: f64| {
        if head {
            m.add_to(row, j, sign * ev.value_head.0);
            m.add_to(row, ne + j, sign * ev.value_head.1);
        } else {
            m.add_to(row, ne + j, sign);
        }
    };
    let slope = |m: &mut Matrix, row: usize, (j, head): (usize, bool), sign: f64| {
        if head {
            m.add_to(row, j, sign * ev.slope_head.0);
            m.add_to(row, ne + j, sign * ev.slope_head.1);
        } else {
            m.add_to(row, j, sign * ev.slope_tail);
        }
    };
    let mut row = 0;
    for (v, vend) in ends.iter().enumerate() {
        match vend.len() {
            0 => {}
            1 => {
                if b.is_dirichlet(v) {
                    value(&mut m, row, vend[0], 1.0);
                } else {
                    slope(&mut m, row, vend[0], 1.0);
                }
                row += 1;
            }
            _ => {
                for &other in &vend[1..] {
                    value(&mut m, row, vend[0], 1.0);
                    value(&mut m, row, other, -1.0);
                    row += 1;
                }
                // Kirchhoff: incoming slopes at l balance outgoing slopes at 0
                for &e in vend {
                    slope(&mut m, row, e, if e.1 { 1.0 } else { -1.0 });
                }
                row += 1;
            }
        }
    }
    debug_assert_eq!(row, 2 * ne);
    m
}

/// The `2g × 2g` matrix of vertex conditions at `x = √λ·l > 0`. Columns
/// `0..g` hold the coefficients of `s_j`, columns `g..2g` those of `c_j`.
pub fn build_char_matrix(
    g: &Graph,
    b: &BoundaryConfig,
    orient: &EdgeOrientation,
    x: f64,
    l: f64,
) -> Matrix {
    assemble(g, b, orient, &EndValues::standard(x, l))
}

/// Column/row rescaling of [`build_char_matrix`] with the same zeros for
/// `x > 0`: `det = k^(g − n_slope) · det(build_char_matrix)`, where
/// `n_slope` counts Kirchhoff and Neumann rows.
pub fn equilibrated_char_matrix(
    g: &Graph,
    b: &BoundaryConfig,
    orient: &EdgeOrientation,
    x: f64,
) -> Matrix {
    assemble(g, b, orient, &EndValues::equilibrated(x))
}

/// Multiplicity of `λ = 0`: nullity of the limiting condition matrix.
pub fn zero_multiplicity(g: &Graph, b: &BoundaryConfig, l: f64) -> usize {
    if g.edge_count() == 0 {
        return 0;
    }
    let m = assemble(g, b, &EdgeOrientation::standard(g), &EndValues::at_zero(l));
    let sv = m.singular_values();
    sv.iter().filter(|&&s| s <= 1e-9 * sv[0]).count()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eigenvalue {
    /// `√λ·l`
    pub x: f64,
    pub lambda: f64,
    pub multiplicity: usize,
}

/// Positive eigenvalues with `√λ·l ≤ x_max`, increasing, plus the
/// multiplicity of `λ = 0` (usually zero).
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSample {
    pub l: f64,
    pub x_max: f64,
    pub eigenvalues: Vec<Eigenvalue>,
    pub zero_multiplicity: usize,
}

impl SpectrumSample {
    fn from_roots(l: f64, x_max: f64, roots: Vec<(f64, usize)>, zero_multiplicity: usize) -> Self {
        let eigenvalues = roots
            .into_iter()
            .map(|(x, multiplicity)| Eigenvalue {
                x,
                lambda: (x / l) * (x / l),
                multiplicity,
            })
            .collect();
        SpectrumSample {
            l,
            x_max,
            eigenvalues,
            zero_multiplicity,
        }
    }

    /// Eigenvalues repeated by multiplicity, increasing.
    pub fn lambdas(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .flat_map(|e| core::iter::repeat_n(e.lambda, e.multiplicity))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }
}

fn check_range(l: f64, x_max: f64) -> Result<()> {
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::InvalidRange(format!(
            "edge length must be positive, got {l}"
        )));
    }
    if !(x_max.is_finite() && x_max > 0.0) {
        return Err(Error::InvalidRange(format!(
            "x_max must be positive, got {x_max}"
        )));
    }
    Ok(())
}

/// Absolute slack when deciding whether a root at `x_max` is inside the range.
const RANGE_SLACK: f64 = 1e-8;
/// Roots of the closed form closer than this are the same eigenvalue.
const MERGE_TOL: f64 = 1e-9;

/// Zeros of `sin(x)^e · P(cos x)` on `(0, x_max]`, `e = g − p + r`.
///
/// A root `α` of `P` with multiplicity `m` contributes `m` at each solution
/// of `cos x = α`; when `α = ±1` the solutions sit on zeros of the sine and
/// contribute `2m`. An empty interior (a single edge with both ends
/// Dirichlet) has `P ≡ 1`.
pub fn closed_form_spectrum(
    g: &Graph,
    b: &BoundaryConfig,
    l: f64,
    x_max: f64,
) -> Result<SpectrumSample> {
    check_range(l, x_max)?;
    let poly = match dirichlet_poly(g, b) {
        Ok(p) => p,
        Err(Error::EmptyInterior) => IntPoly::one(),
        Err(e) => return Err(e),
    };
    let e = sine_exponent(g, b);
    let limit = x_max + RANGE_SLACK;
    let mut contributions: Vec<(f64, i64)> = Vec::new();
    let mut k = 1;
    while k as f64 * PI <= limit {
        contributions.push((k as f64 * PI, e));
        k += 1;
    }
    for (alpha, m) in roots_with_unit_snap(&poly) {
        let m = m as i64;
        if alpha == 1.0 || alpha == -1.0 {
            let start = if alpha == 1.0 { TWO_PI } else { PI };
            let mut x = start;
            let mut k = 0;
            while x <= limit {
                contributions.push((x, 2 * m));
                k += 1;
                x = start + k as f64 * TWO_PI;
            }
        } else if alpha.abs() < 1.0 {
            let theta = libm::acos(alpha);
            for base in [theta, TWO_PI - theta] {
                let mut k = 0;
                let mut x = base;
                while x <= limit {
                    contributions.push((x, m));
                    k += 1;
                    x = base + k as f64 * TWO_PI;
                }
            }
        }
    }
    contributions.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, i64)> = Vec::new();
    for (x, m) in contributions {
        match merged.last_mut() {
            Some(last) if (x - last.0).abs() < MERGE_TOL => last.1 += m,
            _ => merged.push((x, m)),
        }
    }
    let roots = merged
        .into_iter()
        .filter(|&(x, m)| m > 0 && x > 0.0)
        .map(|(x, m)| (x, m as usize))
        .collect();
    Ok(SpectrumSample::from_roots(
        l,
        x_max,
        roots,
        zero_multiplicity(g, b, l),
    ))
}

/// Real roots of `poly`, with roots that are exactly `±1` reported as such.
fn roots_with_unit_snap(poly: &IntPoly) -> Vec<(f64, usize)> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let at_one = poly.eval(&BigInt::from(1)).is_zero();
    let at_minus_one = poly.eval(&BigInt::from(-1)).is_zero();
    real_roots(poly)
        .into_iter()
        .map(|(a, m)| {
            if at_one && (a - 1.0).abs() < 1e-9 {
                (1.0, m)
            } else if at_minus_one && (a + 1.0).abs() < 1e-9 {
                (-1.0, m)
            } else {
                (a, m)
            }
        })
        .collect()
}

/// Parameters of the determinant scan.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    /// Grid step in `x`.
    pub step: f64,
    /// Bisection width for simple roots.
    pub tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            step: PI / 1000.0,
            tol: 1e-10,
        }
    }
}

/// Smallest over largest singular value: a scale-free distance to singularity.
fn singularity_ratio(m: &Matrix) -> (f64, Vec<f64>) {
    let sv = m.singular_values();
    let ratio = sv.last().copied().unwrap_or(1.0) / sv[0];
    (ratio, sv)
}

/// Sampled determinant and singularity ratio of the equilibrated matrix on
/// the grid `x = step, 2·step, …` up to `x_max`: rows of `(x, det, ratio)`.
pub fn det_scan(
    g: &Graph,
    b: &BoundaryConfig,
    orient: &EdgeOrientation,
    x_max: f64,
    step: f64,
) -> Vec<(f64, f64, f64)> {
    let n = libm::ceil(x_max / step) as usize;
    (1..=n)
        .map(|i| {
            let x = i as f64 * step;
            let m = equilibrated_char_matrix(g, b, orient, x);
            (x, m.det(), singularity_ratio(&m).0)
        })
        .collect()
}

/// Zeros of the full vertex-condition determinant on `(0, x_max]` using the
/// standard orientation and default scan options.
pub fn direct_spectrum(
    g: &Graph,
    b: &BoundaryConfig,
    l: f64,
    x_max: f64,
) -> Result<SpectrumSample> {
    direct_spectrum_with(
        g,
        b,
        &EdgeOrientation::standard(g),
        l,
        x_max,
        ScanOptions::default(),
    )
}

pub fn direct_spectrum_with(
    g: &Graph,
    b: &BoundaryConfig,
    orient: &EdgeOrientation,
    l: f64,
    x_max: f64,
    opts: ScanOptions,
) -> Result<SpectrumSample> {
    check_range(l, x_max)?;
    b.dirichlet_vertices().try_for_each(|v| {
        if g.degree(v) == 1 {
            Ok(())
        } else {
            Err(Error::InvalidBoundary(format!(
                "vertex {v} is not a pendant vertex"
            )))
        }
    })?;
    if g.edge_count() == 0 {
        return Ok(SpectrumSample::from_roots(l, x_max, Vec::new(), 0));
    }
    let eval = |x: f64| {
        let m = equilibrated_char_matrix(g, b, orient, x);
        let (ratio, sv) = singularity_ratio(&m);
        (m.det(), ratio, sv)
    };
    // grid from 0 to one step past x_max so a root at x_max has a right neighbour
    let n = libm::ceil(x_max / opts.step) as usize + 2;
    let grid: Vec<(f64, f64, f64)> = (0..=n)
        .map(|i| {
            let x = i as f64 * opts.step;
            let (d, r, _) = eval(x);
            (x, d, r)
        })
        .collect();

    let mut roots: Vec<(f64, usize)> = Vec::new();
    for i in 1..grid.len() - 1 {
        let (prev, cur, next) = (grid[i - 1], grid[i], grid[i + 1]);
        if !(cur.2 <= prev.2 && cur.2 < next.2) {
            continue;
        }
        let (a, bnd) = (prev.0, next.0);
        let sign_change = prev.1 * next.1 < 0.0;
        let x_star = golden_min(|x| eval(x).1, a, bnd, 1e-13);
        let (_, ratio, sv) = eval(x_star);
        if ratio >= 1e-8 {
            if sign_change {
                return Err(Error::ConvergenceFailure { x: x_star });
            }
            continue;
        }
        let multiplicity = sv.iter().filter(|&&s| s < 1e-6 * sv[0]).count();
        let x = if multiplicity == 1 && sign_change {
            bisect(|x| eval(x).0, a, bnd, opts.tol)?
        } else {
            x_star
        };
        if x <= 1e-9 || x > x_max + RANGE_SLACK {
            continue;
        }
        match roots.last_mut() {
            Some(last) if (x - last.0).abs() < 1e-7 => last.1 = last.1.max(multiplicity),
            _ => roots.push((x, multiplicity)),
        }
    }
    Ok(SpectrumSample::from_roots(
        l,
        x_max,
        roots,
        zero_multiplicity(g, b, l),
    ))
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    for _ in 0..200 {
        if b - a <= tol {
            return Ok(0.5 * (a + b));
        }
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Err(Error::ConvergenceFailure { x: 0.5 * (a + b) })
}

/// Asymptotic branch data read off a spectrum: the cosines `α_i` of the
/// arccos-type branches (with multiplicity) and the number of branches on the
/// lattice `πk`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchData {
    /// Increasing, repeated by multiplicity.
    pub alpha_values: Vec<f64>,
    pub pi_branch_count: usize,
    pub p_tilde: usize,
    pub p_pen_tilde: usize,
}

impl BranchData {
    /// Branch data given directly by its cosines and the pendant count.
    pub fn new(mut alpha_values: Vec<f64>, p_pen_tilde: usize) -> Result<BranchData> {
        if let Some(a) = alpha_values.iter().find(|a| a.is_nan() || a.abs() >= 1.0) {
            return Err(Error::InvalidRange(format!(
                "alpha {a} lies outside (-1, 1)"
            )));
        }
        if p_pen_tilde < 2 {
            return Err(Error::InvalidRange(format!(
                "a tree has at least two pendant vertices, got {p_pen_tilde}"
            )));
        }
        alpha_values.sort_by(f64::total_cmp);
        Ok(BranchData {
            p_tilde: alpha_values.len(),
            alpha_values,
            pi_branch_count: p_pen_tilde - 1,
            p_pen_tilde,
        })
    }

    /// `γ_i = arccos(α_i) / l`.
    pub fn gammas(&self, l: f64) -> Vec<f64> {
        self.alpha_values
            .iter()
            .map(|&a| libm::acos(a) / l)
            .collect()
    }

    /// Number of eigenvalue subsequences, `2p̃ + p̃_pen − 1`.
    pub fn branch_count(&self) -> usize {
        2 * self.p_tilde + self.pi_branch_count
    }
}

/// Cosine tolerance below which two branch values count as one cluster.
pub const CLUSTER_TOL: f64 = 1e-6;

/// Splits a spectrum into the `πk` lattice and the arccos-type branches.
///
/// Uses only the full periods `(0, 2πK]` covered by the sample (`K ≥ 3`). For
/// zero potential every branch repeats exactly, so each cosine cluster must
/// hold `2K` eigenvalues of equal multiplicity and every lattice point the
/// same multiplicity; anything else is reported as [`Error::ClusterAmbiguity`],
/// as is a mismatch with `expected = (p, p_pen)` when given.
pub fn extract_branches(
    sample: &SpectrumSample,
    expected: Option<(usize, usize)>,
) -> Result<BranchData> {
    let periods = libm::floor(sample.x_max / TWO_PI + 1e-9) as usize;
    if periods < 3 {
        return Err(Error::InvalidRange(format!(
            "branch extraction needs x_max >= 6π, got {}",
            sample.x_max
        )));
    }
    let limit = periods as f64 * TWO_PI + RANGE_SLACK;
    let mut lattice: Vec<usize> = Vec::new();
    let mut points: Vec<(f64, usize)> = Vec::new();
    for ev in sample.eigenvalues.iter().filter(|e| e.x <= limit) {
        let half_turns = libm::round(ev.x / PI);
        if (ev.x - half_turns * PI).abs() < 1e-7 {
            lattice.push(ev.multiplicity);
        } else {
            points.push((libm::cos(ev.x), ev.multiplicity));
        }
    }
    let pi_branch_count = match lattice.first() {
        None => 0,
        Some(&m) => {
            if lattice.len() != 2 * periods || lattice.iter().any(|&x| x != m) {
                return Err(Error::ClusterAmbiguity(format!(
                    "lattice points {} of {} with multiplicities {:?}",
                    lattice.len(),
                    2 * periods,
                    lattice
                )));
            }
            m
        }
    };
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut alpha_values = Vec::new();
    let mut i = 0;
    while i < points.len() {
        let start = points[i].0;
        let mut j = i;
        while j < points.len() && points[j].0 - start < CLUSTER_TOL {
            j += 1;
        }
        let cluster = &points[i..j];
        let m = cluster[0].1;
        if cluster.len() != 2 * periods || cluster.iter().any(|c| c.1 != m) {
            return Err(Error::ClusterAmbiguity(format!(
                "cluster near cos = {start} has {} points (expected {}) with multiplicities {:?}",
                cluster.len(),
                2 * periods,
                cluster.iter().map(|c| c.1).collect::<Vec<_>>()
            )));
        }
        let mean = cluster.iter().map(|c| c.0).sum::<f64>() / cluster.len() as f64;
        alpha_values.extend(core::iter::repeat_n(mean, m));
        i = j;
    }
    let data = BranchData {
        p_tilde: alpha_values.len(),
        alpha_values,
        pi_branch_count,
        p_pen_tilde: pi_branch_count + 1,
    };
    if let Some((p, p_pen)) = expected {
        if data.p_tilde + p_pen != p || data.pi_branch_count + 1 != p_pen {
            return Err(Error::ClusterAmbiguity(format!(
                "found {} arccos branches and {} lattice branches, expected {} and {}",
                data.p_tilde,
                data.pi_branch_count,
                p.saturating_sub(p_pen),
                p_pen.saturating_sub(1)
            )));
        }
    }
    Ok(data)
}
