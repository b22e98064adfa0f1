//! Complex-valued MZI mesh core.
//!
//! A mesh of Mach-Zehnder interferometers arranged in the rectangular
//! (Clements) layout realizes an arbitrary N×N unitary with N(N−1)/2 MZIs
//! (two phase shifters each, θ internal and φ on the top input) plus a column
//! of N output phase shifters, for N² phase parameters total.
//!
//! The MZI transfer convention used throughout is the two-50:50-coupler form
//!
//! ```text
//! T(θ, φ) = i·e^{iθ/2} · [ e^{iφ}·sin(θ/2)   cos(θ/2) ]
//!                        [ e^{iφ}·cos(θ/2)  −sin(θ/2) ]
//! ```
//!
//! so θ = 0 is the full cross state and θ = π is the bar state. Note the
//! identity mesh does *not* have all-zero phases under this convention.

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{is_finite_matrix, is_finite_vector, unitarity_deviation, CMatrix, CVector};

/// Unitarity acceptance tolerance used when no explicit value is given.
/// Double-precision SVD factors of random matrices meet this comfortably.
pub const DEFAULT_UNITARY_TOL: f64 = 1e-8;

/// A phase in the canonical range (−π, π].
///
/// The signed-symmetric range makes |phase| meaningful as "distance from zero
/// actuation", which the pruning and power metrics rely on; exactly π stays
/// at +π.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseAngle(f64);

impl PhaseAngle {
    pub const ZERO: PhaseAngle = PhaseAngle(0.0);

    /// Wraps an arbitrary finite angle into (−π, π].
    pub fn wrapped(radians: f64) -> Result<Self> {
        if !radians.is_finite() {
            return Err(Error::invalid(format!("non-finite phase: {radians}")));
        }
        Ok(PhaseAngle(wrap_raw(radians)))
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.0.abs()
    }
}

/// Canonicalizes a phase to (−π, π]. Values already in range pass through
/// bit-identically, which makes wrapping idempotent in floating point.
#[inline]
pub(crate) fn wrap_raw(x: f64) -> f64 {
    if x > -PI && x <= PI {
        return x;
    }
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Reduces an angle modulo 2π into the canonical range (−π, π].
pub fn wrap_phase(radians: f64) -> Result<PhaseAngle> {
    PhaseAngle::wrapped(radians)
}

/// One MZI in the mesh: internal arm phase θ, external input phase φ, and its
/// position (column, top port of the pair it couples).
#[derive(Clone, Copy, Debug)]
pub struct MziNode {
    pub theta: PhaseAngle,
    pub phi: PhaseAngle,
    pub column: usize,
    pub top_port: usize,
}

/// 2×2 MZI transfer matrix for the crate's convention; unitary for all θ, φ.
pub fn mzi_transfer(theta: f64, phi: f64) -> Matrix2<Complex64> {
    let (s, c) = ((theta / 2.0).sin(), (theta / 2.0).cos());
    let lead = Complex64::i() * Complex64::from_polar(1.0, theta / 2.0);
    let e_phi = Complex64::from_polar(1.0, phi);
    Matrix2::new(
        lead * e_phi * s,
        lead * c,
        lead * e_phi * c,
        lead * (-s),
    )
}

/// ∂T/∂θ of [`mzi_transfer`].
pub fn mzi_transfer_dtheta(theta: f64, phi: f64) -> Matrix2<Complex64> {
    let (s, c) = ((theta / 2.0).sin(), (theta / 2.0).cos());
    let lead = Complex64::i() * Complex64::from_polar(1.0, theta / 2.0);
    let e_phi = Complex64::from_polar(1.0, phi);
    let half_i = Complex64::new(0.0, 0.5);
    // product rule: (i/2)·T + i·e^{iθ/2}·dM/dθ
    let m_dtheta = Matrix2::new(e_phi * c, -Complex64::from(s), -e_phi * s, -Complex64::from(c));
    mzi_transfer(theta, phi) * half_i + m_dtheta * (lead * 0.5)
}

/// ∂T/∂φ of [`mzi_transfer`]; only the first column depends on φ.
pub fn mzi_transfer_dphi(theta: f64, phi: f64) -> Matrix2<Complex64> {
    let (s, c) = ((theta / 2.0).sin(), (theta / 2.0).cos());
    let lead = Complex64::i() * Complex64::from_polar(1.0, theta / 2.0);
    let i_e_phi = Complex64::i() * Complex64::from_polar(1.0, phi);
    Matrix2::new(
        lead * i_e_phi * s,
        Complex64::new(0.0, 0.0),
        lead * i_e_phi * c,
        Complex64::new(0.0, 0.0),
    )
}

/// Canonical rectangular mesh layout for `n` ports: the (column, top_port)
/// positions in serialization order. Column c hosts MZIs on port pairs whose
/// top port has the parity of c.
pub fn clements_layout(n: usize) -> Vec<(usize, usize)> {
    let mut positions = pack_columns(n, emission_pairs(n).into_iter());
    positions.sort_unstable();
    positions
}

/// Port pairs of the decomposition's MZI chain in application (input to
/// output) order: right-nulling factors first, left-nulling factors reversed.
fn emission_pairs(n: usize) -> Vec<usize> {
    let mut rights = Vec::new();
    let mut lefts = Vec::new();
    for op in nulling_sequence(n) {
        match op {
            NullOp::Right { pair, .. } => rights.push(pair),
            NullOp::Left { pair, .. } => lefts.push(pair),
        }
    }
    rights.extend(lefts.into_iter().rev());
    rights
}

/// An N×N unitary as MZI nodes in column order plus N output phase shifters.
#[derive(Clone, Debug)]
pub struct UnitaryMesh {
    size: usize,
    mzis: Vec<MziNode>,
    output_phases: Vec<PhaseAngle>,
}

impl UnitaryMesh {
    /// Builds a mesh from explicit nodes, validating the structural
    /// invariants: node count N(N−1)/2, (column, top_port) ordering, and
    /// non-overlapping port pairs within a column.
    pub fn new(size: usize, mzis: Vec<MziNode>, output_phases: Vec<PhaseAngle>) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("mesh size must be ≥ 1"));
        }
        if mzis.len() != size * (size - 1) / 2 {
            return Err(Error::invalid(format!(
                "expected {} MZIs for size {size}, got {}",
                size * (size - 1) / 2,
                mzis.len()
            )));
        }
        if output_phases.len() != size {
            return Err(Error::invalid(format!(
                "expected {size} output phases, got {}",
                output_phases.len()
            )));
        }
        for pair in mzis.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if (b.column, b.top_port) <= (a.column, a.top_port) {
                return Err(Error::invalid("MZIs must be ordered by (column, top_port)"));
            }
            if a.column == b.column && b.top_port < a.top_port + 2 {
                return Err(Error::invalid("overlapping port pairs within a column"));
            }
        }
        if let Some(last) = mzis.iter().map(|m| m.top_port).max() {
            if last + 1 >= size {
                return Err(Error::invalid("top_port out of range"));
            }
        }
        Ok(UnitaryMesh {
            size,
            mzis,
            output_phases,
        })
    }

    /// Mesh acting as the identity (decomposition of I, so θ = π throughout
    /// under this convention).
    pub fn identity(size: usize) -> Result<Self> {
        clements_decompose(&CMatrix::identity(size, size), DEFAULT_UNITARY_TOL)
    }

    /// Mesh with phases drawn i.i.d. uniform on (−π, π].
    pub fn random<R: Rng>(size: usize, rng: &mut R) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("mesh size must be ≥ 1"));
        }
        let mzis = clements_layout(size)
            .into_iter()
            .map(|(column, top_port)| MziNode {
                theta: uniform_phase(rng),
                phi: uniform_phase(rng),
                column,
                top_port,
            })
            .collect();
        let output_phases = (0..size).map(|_| uniform_phase(rng)).collect();
        UnitaryMesh::new(size, mzis, output_phases)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mzis(&self) -> &[MziNode] {
        &self.mzis
    }

    pub fn output_phases(&self) -> &[PhaseAngle] {
        &self.output_phases
    }

    /// Total phase-shifter count; always N².
    pub fn phase_count(&self) -> usize {
        self.size * self.size
    }

    /// Flat phases in canonical order: per MZI θ then φ, then the N output ψ.
    pub fn phases(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.phase_count());
        for m in &self.mzis {
            out.push(m.theta.radians());
            out.push(m.phi.radians());
        }
        out.extend(self.output_phases.iter().map(|p| p.radians()));
        out
    }

    /// Writes flat phases back (canonical order); values are wrapped.
    pub fn set_phases(&mut self, phases: &[f64]) -> Result<()> {
        if phases.len() != self.phase_count() {
            return Err(Error::DimensionMismatch {
                expected: self.phase_count(),
                got: phases.len(),
            });
        }
        let mut it = phases.iter();
        for m in &mut self.mzis {
            m.theta = PhaseAngle::wrapped(*it.next().unwrap())?;
            m.phi = PhaseAngle::wrapped(*it.next().unwrap())?;
        }
        for p in &mut self.output_phases {
            *p = PhaseAngle::wrapped(*it.next().unwrap())?;
        }
        Ok(())
    }

    /// Dense N×N transfer matrix: diag(e^{iψ}) · ∏ columns, input to output.
    pub fn matrix(&self) -> CMatrix {
        let mut m = CMatrix::identity(self.size, self.size);
        for node in &self.mzis {
            let t = mzi_transfer(node.theta.radians(), node.phi.radians());
            apply_block_left(&mut m, node.top_port, &t);
        }
        for (k, psi) in self.output_phases.iter().enumerate() {
            let w = Complex64::from_polar(1.0, psi.radians());
            for c in 0..self.size {
                m[(k, c)] *= w;
            }
        }
        m
    }

    /// Applies the mesh to an input field vector by sequential 2×2 blocks;
    /// no full matrix is materialized.
    pub fn forward(&self, x: &CVector) -> Result<CVector> {
        if x.len() != self.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                got: x.len(),
            });
        }
        let mut state = x.clone();
        for node in &self.mzis {
            let t = mzi_transfer(node.theta.radians(), node.phi.radians());
            let p = node.top_port;
            let (a, b) = (state[p], state[p + 1]);
            state[p] = t[(0, 0)] * a + t[(0, 1)] * b;
            state[p + 1] = t[(1, 0)] * a + t[(1, 1)] * b;
        }
        for (k, psi) in self.output_phases.iter().enumerate() {
            state[k] *= Complex64::from_polar(1.0, psi.radians());
        }
        Ok(state)
    }
}

/// Uniform draw on (−π, π]; the boundary value π is attainable, −π is not.
fn uniform_phase<R: Rng>(rng: &mut R) -> PhaseAngle {
    PhaseAngle(PI * (1.0 - 2.0 * rng.gen::<f64>()))
}

/// Left-multiplies `m` by a 2×2 block embedded on rows (p, p+1).
fn apply_block_left(m: &mut CMatrix, p: usize, t: &Matrix2<Complex64>) {
    for c in 0..m.ncols() {
        let (a, b) = (m[(p, c)], m[(p + 1, c)]);
        m[(p, c)] = t[(0, 0)] * a + t[(0, 1)] * b;
        m[(p + 1, c)] = t[(1, 0)] * a + t[(1, 1)] * b;
    }
}

/// Right-multiplies `m` by a 2×2 block embedded on columns (p, p+1).
fn apply_block_right(m: &mut CMatrix, p: usize, t: &Matrix2<Complex64>) {
    for r in 0..m.nrows() {
        let (a, b) = (m[(r, p)], m[(r, p + 1)]);
        m[(r, p)] = a * t[(0, 0)] + b * t[(1, 0)];
        m[(r, p + 1)] = a * t[(0, 1)] + b * t[(1, 1)];
    }
}

/// One step of the rectangular nulling schedule.
#[derive(Clone, Copy, Debug)]
enum NullOp {
    /// Null element (row, pair) by right-multiplying with T† on columns
    /// (pair, pair+1).
    Right { pair: usize, row: usize },
    /// Null element (pair+1, col) by left-multiplying with T on rows
    /// (pair, pair+1).
    Left { pair: usize, col: usize },
}

/// The anti-diagonal sweep order: odd diagonals are cleared from the right,
/// even diagonals from the left. Depends only on `n`, not on matrix values.
fn nulling_sequence(n: usize) -> Vec<NullOp> {
    let mut ops = Vec::with_capacity(n * (n.max(1) - 1) / 2);
    for i in 1..n {
        if i % 2 == 1 {
            for j in 0..i {
                ops.push(NullOp::Right {
                    pair: i - j - 1,
                    row: n - 1 - j,
                });
            }
        } else {
            for j in 1..=i {
                ops.push(NullOp::Left {
                    pair: n + j - i - 2,
                    col: j - 1,
                });
            }
        }
    }
    ops
}

/// Greedy column assignment: each op lands in the earliest column after the
/// last ops that touched either of its ports. For the rectangular schedule
/// this reproduces the canonical parity layout.
fn pack_columns(n: usize, pairs: impl Iterator<Item = usize>) -> Vec<(usize, usize)> {
    let mut next_free = vec![0usize; n];
    pairs
        .map(|p| {
            let col = next_free[p].max(next_free[p + 1]);
            next_free[p] = col + 1;
            next_free[p + 1] = col + 1;
            (col, p)
        })
        .collect()
}

/// Decomposes a unitary into a rectangular mesh, absorbing the residual
/// diagonal into the output phase shifters. All phases are canonicalized.
///
/// Fails with a contract violation when `‖U†U − I‖_F ≥ tol` and with an
/// invalid argument for empty or non-square input.
pub fn clements_decompose(u: &CMatrix, tol: f64) -> Result<UnitaryMesh> {
    let n = u.nrows();
    if n == 0 {
        return Err(Error::invalid("cannot decompose an empty matrix"));
    }
    if u.ncols() != n {
        return Err(Error::invalid(format!(
            "matrix must be square, got {n}×{}",
            u.ncols()
        )));
    }
    if !is_finite_matrix(u) {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    let deviation = unitarity_deviation(u);
    if deviation >= tol {
        return Err(Error::ContractViolation(format!(
            "input is not unitary within tol {tol}: ‖U†U − I‖_F = {deviation:.3e}"
        )));
    }

    let mut work = u.clone();
    let mut rights: Vec<(usize, f64, f64)> = Vec::new();
    let mut lefts: Vec<(usize, f64, f64)> = Vec::new();

    for op in nulling_sequence(n) {
        match op {
            NullOp::Right { pair, row } => {
                let a = work[(row, pair)];
                let b = work[(row, pair + 1)];
                let theta = 2.0 * b.norm().atan2(a.norm());
                // Either entry zero leaves φ free; zero maximizes sparsity.
                let phi = if a.norm() == 0.0 || b.norm() == 0.0 {
                    0.0
                } else {
                    wrap_raw(a.arg() - b.arg() - PI)
                };
                apply_block_right(&mut work, pair, &mzi_transfer(theta, phi).adjoint());
                work[(row, pair)] = Complex64::new(0.0, 0.0);
                rights.push((pair, theta, phi));
            }
            NullOp::Left { pair, col } => {
                let a = work[(pair, col)];
                let b = work[(pair + 1, col)];
                let theta = 2.0 * a.norm().atan2(b.norm());
                let phi = if a.norm() == 0.0 || b.norm() == 0.0 {
                    0.0
                } else {
                    wrap_raw(b.arg() - a.arg())
                };
                apply_block_left(&mut work, pair, &mzi_transfer(theta, phi));
                work[(pair + 1, col)] = Complex64::new(0.0, 0.0);
                lefts.push((pair, theta, phi));
            }
        }
    }

    let mut psi: Vec<f64> = (0..n).map(|k| work[(k, k)].arg()).collect();

    // U = L₁†⋯L_p† · D · T_q⋯T₁. Push each left factor through the diagonal
    // (innermost first): T†(θ, φ)·D = D'·T(θ, ψ_top − ψ_bot) with
    // ψ'_top = ψ_bot − φ − θ + π and ψ'_bot = ψ_bot − θ + π.
    let mut sequence: Vec<(usize, f64, f64)> = rights;
    for &(pair, theta, phi) in lefts.iter().rev() {
        let (top, bot) = (psi[pair], psi[pair + 1]);
        sequence.push((pair, theta, wrap_raw(top - bot)));
        psi[pair] = wrap_raw(bot - phi - theta + PI);
        psi[pair + 1] = wrap_raw(bot - theta + PI);
    }

    let positions = pack_columns(n, sequence.iter().map(|&(pair, _, _)| pair));
    let mut mzis: Vec<MziNode> = sequence
        .iter()
        .zip(positions)
        .map(|(&(pair, theta, phi), (column, top_port))| {
            debug_assert_eq!(pair, top_port);
            Ok(MziNode {
                theta: PhaseAngle::wrapped(theta)?,
                phi: PhaseAngle::wrapped(phi)?,
                column,
                top_port,
            })
        })
        .collect::<Result<_>>()?;
    mzis.sort_unstable_by_key(|m| (m.column, m.top_port));

    let output_phases = psi
        .into_iter()
        .map(PhaseAngle::wrapped)
        .collect::<Result<_>>()?;
    UnitaryMesh::new(n, mzis, output_phases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::haar_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn wrap_phase_examples() {
        assert_eq!(wrap_phase(0.0).unwrap().radians(), 0.0);
        assert!((wrap_phase(3.0 * PI).unwrap().radians() - PI).abs() < 1e-12);
        assert!((wrap_phase(-1.5 * PI).unwrap().radians() - PI / 2.0).abs() < 1e-12);
        assert_eq!(wrap_phase(-PI).unwrap().radians(), PI);
        assert!(wrap_phase(f64::NAN).is_err());
        assert!(wrap_phase(f64::INFINITY).is_err());
    }

    #[test]
    fn wrap_is_idempotent_and_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..2000 {
            let x = 50.0 * (rng.gen::<f64>() - 0.5);
            let once = wrap_raw(x);
            assert!(once > -PI && once <= PI, "x={x} once={once}");
            assert_eq!(wrap_raw(once), once, "x={x}");
            // equivalent mod 2π
            let k = ((x - once) / (2.0 * PI)).round();
            assert!((x - once - 2.0 * PI * k).abs() < 1e-9);
        }
    }

    #[test]
    fn mzi_transfer_cross_state() {
        let t = mzi_transfer(0.0, 0.0);
        let expect = [[c(0.0, 0.0), c(0.0, 1.0)], [c(0.0, 1.0), c(0.0, 0.0)]];
        for r in 0..2 {
            for col in 0..2 {
                assert!((t[(r, col)] - expect[r][col]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn mzi_transfer_bar_state() {
        let t = mzi_transfer(PI, 0.0);
        let expect = [[c(-1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        for r in 0..2 {
            for col in 0..2 {
                assert!((t[(r, col)] - expect[r][col]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn mzi_transfer_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let theta = PI * (1.0 - 2.0 * rng.gen::<f64>());
            let phi = PI * (1.0 - 2.0 * rng.gen::<f64>());
            let t = mzi_transfer(theta, phi);
            let dev = (t.adjoint() * t - Matrix2::identity()).norm();
            assert!(dev < 1e-14);
        }
    }

    #[test]
    fn mzi_transfer_derivatives_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = 1e-6;
        for _ in 0..50 {
            let theta = 2.0 * (rng.gen::<f64>() - 0.5);
            let phi = 2.0 * (rng.gen::<f64>() - 0.5);
            let scale = Complex64::from(0.5 / h);
            let dt = (mzi_transfer(theta + h, phi) - mzi_transfer(theta - h, phi)) * scale;
            let dp = (mzi_transfer(theta, phi + h) - mzi_transfer(theta, phi - h)) * scale;
            assert!((dt - mzi_transfer_dtheta(theta, phi)).norm() < 1e-8);
            assert!((dp - mzi_transfer_dphi(theta, phi)).norm() < 1e-8);
        }
    }

    #[test]
    fn layout_matches_parity_rectangle() {
        for n in 1..=12 {
            let layout = clements_layout(n);
            assert_eq!(layout.len(), n * (n - 1) / 2);
            let mut expected: Vec<(usize, usize)> = (0..n)
                .flat_map(|col| {
                    ((col % 2)..n.saturating_sub(1))
                        .step_by(2)
                        .map(move |p| (col, p))
                })
                .collect();
            expected.sort_unstable();
            assert_eq!(layout, expected, "n={n}");
        }
    }

    #[test]
    fn all_bar_mesh_is_diagonal() {
        let n = 6;
        let mzis = clements_layout(n)
            .into_iter()
            .map(|(column, top_port)| MziNode {
                theta: PhaseAngle::wrapped(PI).unwrap(),
                phi: PhaseAngle::ZERO,
                column,
                top_port,
            })
            .collect();
        let mesh = UnitaryMesh::new(n, mzis, vec![PhaseAngle::ZERO; n]).unwrap();
        let m = mesh.matrix();
        for r in 0..n {
            for col in 0..n {
                if r == col {
                    assert!((m[(r, col)].norm() - 1.0).abs() < 1e-12);
                } else {
                    assert!(m[(r, col)].norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn two_port_mesh_equals_phased_transfer() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mesh = UnitaryMesh::random(2, &mut rng).unwrap();
        let node = mesh.mzis()[0];
        let t = mzi_transfer(node.theta.radians(), node.phi.radians());
        let m = mesh.matrix();
        for r in 0..2 {
            let w = Complex64::from_polar(1.0, mesh.output_phases()[r].radians());
            for col in 0..2 {
                assert!((m[(r, col)] - w * t[(r, col)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn random_mesh_matrix_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for n in [1, 2, 3, 8, 13] {
            let mesh = UnitaryMesh::random(n, &mut rng).unwrap();
            assert_eq!(mesh.phase_count(), n * n);
            assert!(unitarity_deviation(&mesh.matrix()) < 1e-10, "n={n}");
        }
    }

    #[test]
    fn forward_matches_matrix_and_preserves_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = 8;
            let mesh = UnitaryMesh::random(n, &mut rng).unwrap();
            let x = CVector::from_fn(n, |_, _| {
                c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            });
            let by_blocks = mesh.forward(&x).unwrap();
            let by_matrix = mesh.matrix() * &x;
            assert!((&by_blocks - &by_matrix).norm() / by_matrix.norm() < 1e-12);
            assert!((by_blocks.norm() - x.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn forward_identity_mesh_is_identity() {
        let mesh = UnitaryMesh::identity(5).unwrap();
        let x = CVector::from_fn(5, |i, _| c(i as f64 + 0.5, -(i as f64)));
        let y = mesh.forward(&x).unwrap();
        assert!((&y - &x).norm() < 1e-12);
    }

    #[test]
    fn forward_rejects_wrong_dimension() {
        let mesh = UnitaryMesh::identity(3).unwrap();
        let x = CVector::zeros(4);
        assert!(matches!(
            mesh.forward(&x),
            Err(Error::DimensionMismatch { expected: 3, got: 4 })
        ));
    }

    #[test]
    fn decompose_identity() {
        let mesh = clements_decompose(&CMatrix::identity(4, 4), 1e-10).unwrap();
        let err = (mesh.matrix() - CMatrix::identity(4, 4)).norm();
        assert!(err < 1e-10, "err={err}");
    }

    #[test]
    fn decompose_swap_is_cross_state() {
        let mut swap = CMatrix::zeros(2, 2);
        swap[(0, 1)] = c(1.0, 0.0);
        swap[(1, 0)] = c(1.0, 0.0);
        let mesh = clements_decompose(&swap, 1e-10).unwrap();
        assert_eq!(mesh.mzis().len(), 1);
        assert!(mesh.mzis()[0].theta.abs() < 1e-12, "θ should be cross (0)");
        assert!((mesh.matrix() - swap).norm() < 1e-12);
    }

    #[test]
    fn decompose_roundtrip_haar() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in [1, 2, 3, 5, 9, 16] {
            let u = haar_unitary(n, &mut rng);
            let mesh = clements_decompose(&u, DEFAULT_UNITARY_TOL).unwrap();
            let err = (mesh.matrix() - &u).norm();
            assert!(err < 1e-9, "n={n} err={err:.3e}");
            for m in mesh.mzis() {
                assert!(m.theta.radians() > -PI && m.theta.radians() <= PI);
                assert!(m.phi.radians() > -PI && m.phi.radians() <= PI);
            }
        }
    }

    #[test]
    fn decompose_rejects_bad_input() {
        let not_unitary = CMatrix::from_fn(3, 3, |r, c_| c((r + c_) as f64, 0.0));
        assert!(matches!(
            clements_decompose(&not_unitary, DEFAULT_UNITARY_TOL),
            Err(Error::ContractViolation(_))
        ));
        assert!(matches!(
            clements_decompose(&CMatrix::zeros(0, 0), DEFAULT_UNITARY_TOL),
            Err(Error::InvalidArgument(_))
        ));
    }
}
