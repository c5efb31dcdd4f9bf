//! Brute-force validator working in the full `2^N` Hilbert space.
//!
//! Degenerate basis states `|J, M, N, i>` are built explicitly by coupling
//! spins one at a time along a path of intermediate spins. For the
//! bipartition-compatible basis, spins `1..=n` are coupled among themselves
//! (path `i^{j1}`), spins `n+1..=N` likewise (path `i^{j2}`), and the two
//! blocks are then coupled to `(J, M)`. Entropies come from a direct partial
//! trace of the dense vector, with no use of block weights.
//!
//! Basis ordering: bit `N - k` of the index is spin `k` (spin 1 most
//! significant); a clear bit is spin up (`m = +1/2`).

use num_complex::Complex64;

use crate::angular::{cg, j_min};
use crate::numerics::{entropy_bits, hermitian_eigenvalues, HalfInt, HermitianMatrix, EIGENVALUE_FLOOR};
use crate::par::*;
use crate::states::PiState;
use crate::{Error, Result};

/// Largest ensemble the oracle will expand.
pub const MAX_PARTICLES: u32 = 14;
/// Largest ensemble for the sequential-coupling comparison.
pub const MAX_PATH_PARTICLES: u32 = 12;

fn check_size(n: u32, max: u32) -> Result<()> {
    if n > max {
        return Err(Error::TooLarge { n, max });
    }
    if n == 0 {
        return Err(Error::InvalidQuantumNumbers("N must be at least 1".into()));
    }
    Ok(())
}

/// A state vector of `N` spins in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    particles: u32,
    amplitudes: Vec<Complex64>,
}

impl DenseState {
    pub fn new(particles: u32, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_size(particles, MAX_PARTICLES)?;
        if amplitudes.len() != 1 << particles {
            return Err(Error::DimensionMismatch { len: amplitudes.len(), expected: 1 << particles });
        }
        let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!("squared norm {norm} is not 1")));
        }
        Ok(DenseState { particles, amplitudes })
    }

    /// All spins in the given single-spin state (`false` = up).
    pub fn product(particles: u32, down: &[bool]) -> Result<Self> {
        check_size(particles, MAX_PARTICLES)?;
        if down.len() != particles as usize {
            return Err(Error::DimensionMismatch { len: down.len(), expected: particles as usize });
        }
        let idx = down.iter().fold(0usize, |acc, &d| (acc << 1) | usize::from(d));
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << particles];
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Self::new(particles, amplitudes)
    }

    /// `(|up...up> + |down...down>) / sqrt 2`.
    pub fn ghz(particles: u32) -> Result<Self> {
        check_size(particles, MAX_PARTICLES)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << particles];
        amplitudes[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amplitudes[(1 << particles) - 1] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(particles, amplitudes)
    }

    pub fn particles(&self) -> u32 {
        self.particles
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &DenseState) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }
}

/// Intermediate total spins along a one-spin-at-a-time coupling path.
/// `steps[k]` is the spin after coupling `k + 1` particles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CouplingTree {
    steps: Vec<HalfInt>,
}

impl CouplingTree {
    pub fn new(steps: Vec<HalfInt>) -> Result<Self> {
        let ok = steps.first() == Some(&HalfInt::HALF)
            && steps.windows(2).all(|w| (w[1] - w[0]).abs() == HalfInt::HALF)
            && steps.iter().all(|s| s.twice() >= 0);
        if !ok {
            return Err(Error::InvalidQuantumNumbers(format!("not a coupling path: {steps:?}")));
        }
        Ok(CouplingTree { steps })
    }

    pub fn steps(&self) -> &[HalfInt] {
        &self.steps
    }

    pub fn final_spin(&self) -> HalfInt {
        *self.steps.last().expect("paths are non-empty")
    }
}

/// All coupling paths of `spins` particles ending at total spin `j`.
pub fn coupling_paths(spins: u32, j: HalfInt) -> Vec<CouplingTree> {
    fn extend(prefix: &mut Vec<HalfInt>, remaining: u32, target: HalfInt, out: &mut Vec<CouplingTree>) {
        let cur = *prefix.last().unwrap();
        if remaining == 0 {
            if cur == target {
                out.push(CouplingTree { steps: prefix.clone() });
            }
            return;
        }
        // can the target still be reached?
        if (cur - target).abs().twice() > remaining as i64 {
            return;
        }
        for next in [cur + HalfInt::HALF, cur - HalfInt::HALF] {
            if next.twice() >= 0 {
                prefix.push(next);
                extend(prefix, remaining - 1, target, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if spins > 0 {
        extend(&mut vec![HalfInt::HALF], spins - 1, j, &mut out);
    }
    out
}

/// The `2j + 1` states `|j, m>` (ascending `m`) of a coupling path, as real
/// vectors over `2^spins` entries.
fn coupled_multiplet(path: &CouplingTree) -> Vec<Vec<f64>> {
    // m = -1/2 is |down> (index 1), m = +1/2 is |up> (index 0)
    let mut states = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
    let mut prev = HalfInt::HALF;
    for &j in &path.steps[1..] {
        let len = states[0].len() * 2;
        let next: Vec<Vec<f64>> = j
            .projections()
            .map(|m| {
                let mut v = vec![0.0; len];
                for (bit, ms) in [(0usize, HalfInt::HALF), (1usize, -HalfInt::HALF)] {
                    let mp = m - ms;
                    if mp.abs() > prev {
                        continue;
                    }
                    let c = cg(j, m, prev, mp, HalfInt::HALF, ms).expect("valid quantum numbers").to_f64();
                    if c == 0.0 {
                        continue;
                    }
                    let src = &states[((mp + prev).twice() / 2) as usize];
                    for (i, &a) in src.iter().enumerate() {
                        v[2 * i + bit] += c * a;
                    }
                }
                v
            })
            .collect();
        states = next;
        prev = j;
    }
    states
}

fn m_index(j: HalfInt, m: HalfInt) -> usize {
    ((m + j).twice() / 2) as usize
}

/// `sum_M c_M sum_{m1} <j1 m1; j2 M-m1 | J M> |j1 m1>_A |j2 M-m1>_B`.
fn couple_blocks(
    j: HalfInt,
    amplitudes: &[(HalfInt, Complex64)],
    j1: HalfInt,
    left: &[Vec<f64>],
    j2: HalfInt,
    right: &[Vec<f64>],
) -> Vec<Complex64> {
    let right_len = right[0].len();
    let mut out = vec![Complex64::new(0.0, 0.0); left[0].len() * right_len];
    for &(m, c) in amplitudes {
        for m1 in j1.projections() {
            let m2 = m - m1;
            if m2.abs() > j2 {
                continue;
            }
            let coeff = cg(j, m, j1, m1, j2, m2).expect("valid quantum numbers").to_f64();
            if coeff == 0.0 {
                continue;
            }
            let a = &left[m_index(j1, m1)];
            let b = &right[m_index(j2, m2)];
            for (ia, &x) in a.iter().enumerate() {
                if x == 0.0 {
                    continue;
                }
                let row = &mut out[ia * right_len..(ia + 1) * right_len];
                let scale = c * coeff * x;
                for (slot, &y) in row.iter_mut().zip(b) {
                    *slot += scale * y;
                }
            }
        }
    }
    out
}

/// One vector of the bipartition-compatible degenerate basis.
#[derive(Clone, Debug)]
pub struct BasisVector {
    pub j1: HalfInt,
    pub path1: CouplingTree,
    pub j2: HalfInt,
    pub path2: CouplingTree,
    pub state: DenseState,
}

fn subensemble_spins(spins: u32) -> impl Iterator<Item = HalfInt> {
    (j_min(spins).twice()..=spins as i64).step_by(2).map(HalfInt::from_twice)
}

fn couples_to(j: HalfInt, j1: HalfInt, j2: HalfInt) -> bool {
    (j1 - j2).abs() <= j && j <= j1 + j2
}

struct LabelledBlock {
    j1: HalfInt,
    j2: HalfInt,
    left: Vec<(CouplingTree, Vec<Vec<f64>>)>,
    right: Vec<(CouplingTree, Vec<Vec<f64>>)>,
}

fn labelled_blocks(total: u32, n: u32, j: HalfInt) -> Vec<LabelledBlock> {
    let mut blocks = Vec::new();
    for j1 in subensemble_spins(n) {
        for j2 in subensemble_spins(total - n) {
            if !couples_to(j, j1, j2) {
                continue;
            }
            let build = |spins, s| {
                coupling_paths(spins, s).into_iter().map(|p| {
                    let m = coupled_multiplet(&p);
                    (p, m)
                }).collect::<Vec<_>>()
            };
            blocks.push(LabelledBlock { j1, j2, left: build(n, j1), right: build(total - n, j2) });
        }
    }
    blocks
}

fn check_state_numbers(total: u32, n: u32, j: HalfInt) -> Result<()> {
    check_size(total, MAX_PARTICLES)?;
    if n == 0 || n >= total {
        return Err(Error::InvalidSplit { n, total });
    }
    crate::angular::validate_total_spin(j, total)
}

/// The `d^J_N` basis vectors `|J, M, N, (i^{j1}, i^{j2})>` compatible with
/// the split at `n`.
pub fn build_block_basis(total: u32, n: u32, j: HalfInt, m: HalfInt) -> Result<Vec<BasisVector>> {
    check_state_numbers(total, n, j)?;
    if m.abs() > j || !m.same_parity(j) {
        return Err(Error::InvalidQuantumNumbers(format!("M = {m} is not a projection of J = {j}")));
    }
    let amplitude = [(m, Complex64::new(1.0, 0.0))];
    let mut out = Vec::new();
    for block in labelled_blocks(total, n, j) {
        for (p1, left) in &block.left {
            for (p2, right) in &block.right {
                let amps = couple_blocks(j, &amplitude, block.j1, left, block.j2, right);
                out.push(BasisVector {
                    j1: block.j1,
                    path1: p1.clone(),
                    j2: block.j2,
                    path2: p2.clone(),
                    state: DenseState { particles: total, amplitudes: amps },
                });
            }
        }
    }
    Ok(out)
}

fn reduced_matrix(amplitudes: &[Complex64], total: u32, n: u32) -> HermitianMatrix {
    let right = 1usize << (total - n);
    let left = 1usize << n;
    if left <= right {
        HermitianMatrix::from_upper(left, |a, b| {
            let ra = &amplitudes[a * right..(a + 1) * right];
            let rb = &amplitudes[b * right..(b + 1) * right];
            ra.iter().zip(rb).map(|(x, y)| x * y.conj()).sum()
        })
    } else {
        HermitianMatrix::from_upper(right, |a, b| {
            (0..left).map(|i| amplitudes[i * right + a] * amplitudes[i * right + b].conj()).sum()
        })
    }
}

fn entropy_of(amplitudes: &[Complex64], total: u32, n: u32) -> Result<f64> {
    let rho = reduced_matrix(amplitudes, total, n);
    let spectrum: Vec<f64> = hermitian_eigenvalues(&rho)?
        .into_iter()
        .map(|x| if x < EIGENVALUE_FLOOR { 0.0 } else { x })
        .collect();
    entropy_bits(&spectrum)
}

/// Entanglement entropy of a dense pure state between spins `1..=n` and the rest.
pub fn oracle_entropy_dense(state: &DenseState, n: u32) -> Result<f64> {
    let total = state.particles;
    check_size(total, MAX_PARTICLES)?;
    if n == 0 || n >= total {
        return Err(Error::InvalidSplit { n, total });
    }
    entropy_of(&state.amplitudes, total, n)
}

/// Average entanglement entropy over the `d^J_N` degenerate copies of a
/// logically pure PI state, each expanded in full.
pub fn oracle_ef(state: &PiState, n: u32) -> Result<f64> {
    let (total, j) = (state.particles(), state.total_spin());
    check_state_numbers(total, n, j)?;
    let amplitudes: Vec<_> = state.support().collect();
    let mut entropies = Vec::new();
    for block in labelled_blocks(total, n, j) {
        let jobs: Vec<(usize, usize)> = (0..block.left.len())
            .flat_map(|a| (0..block.right.len()).map(move |b| (a, b)))
            .collect();
        let block_entropies = jobs
            .into_par_iter()
            .map(|(a, b)| {
                let amps = couple_blocks(j, &amplitudes, block.j1, &block.left[a].1, block.j2, &block.right[b].1);
                entropy_of(&amps, total, n)
            })
            .collect::<Result<Vec<_>>>()?;
        entropies.extend(block_entropies);
    }
    Ok(entropies.iter().sum::<f64>() / entropies.len() as f64)
}

/// Number of degenerate copies the oracle enumerates for `(N, n, J)`.
pub fn oracle_label_count(total: u32, n: u32, j: HalfInt) -> Result<usize> {
    check_state_numbers(total, n, j)?;
    Ok(labelled_blocks(total, n, j).iter().map(|b| b.left.len() * b.right.len()).sum())
}

/// Average entropy at split `n` over the left-to-right coupling basis, whose
/// degenerate copies are not aligned with the bipartition.
pub fn path_average_entropy(total: u32, n: u32, j: HalfInt, m: HalfInt) -> Result<f64> {
    check_size(total, MAX_PATH_PARTICLES)?;
    check_state_numbers(total, n, j)?;
    if m.abs() > j || !m.same_parity(j) {
        return Err(Error::InvalidQuantumNumbers(format!("M = {m} is not a projection of J = {j}")));
    }
    let paths = coupling_paths(total, j);
    let entropies = paths
        .par_iter()
        .map(|p| {
            let v = &coupled_multiplet(p)[m_index(j, m)];
            let amps: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
            entropy_of(&amps, total, n)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(entropies.iter().sum::<f64>() / entropies.len() as f64)
}

/// `J_z |v>` with `J_z = (1/2) sum_k sigma_z,k`.
pub fn apply_jz(state: &DenseState) -> Vec<Complex64> {
    let n = state.particles;
    state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(i, &a)| a * ((n as f64 - 2.0 * i.count_ones() as f64) / 2.0))
        .collect()
}

// raise = true: J_+ (flips a down spin up)
fn apply_ladder(v: &[Complex64], particles: u32, raise: bool) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (i, &a) in v.iter().enumerate() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        for k in 0..particles {
            let bit = 1usize << k;
            if (i & bit != 0) == raise {
                out[i ^ bit] += a;
            }
        }
    }
    out
}

/// `J^2 |v> = (J_- J_+ + J_z^2 + J_z) |v>`.
pub fn apply_j_squared(state: &DenseState) -> Vec<Complex64> {
    let n = state.particles;
    let raised = apply_ladder(&state.amplitudes, n, true);
    let lowered = apply_ladder(&raised, n, false);
    let jz = apply_jz(state);
    let jz2 = apply_jz(&DenseState { particles: n, amplitudes: jz.clone() });
    lowered.iter().zip(&jz2).zip(&jz).map(|((a, b), c)| a + b + c).collect()
}
