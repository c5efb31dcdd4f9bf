//! Entanglement of formation of logically pure PI states.
//!
//! For a split into `n` and `N - n` spins,
//!
//! ```text
//! E_F = sum over (j1, j2) of  d^{j1}_n d^{j2}_{N-n} / d^J_N * S(sigma1^{(j1,j2)})
//! ```
//!
//! where `sigma1` is the reduced state of subensemble 1 inside one block and
//! `S` its von Neumann entropy in bits. Blocks are independent and evaluated
//! in parallel; the weighted sum is always accumulated in ascending
//! `(j1, j2)` order so results do not depend on the thread count.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::angular::{allowed_pairs, cg_row, validate_total_spin, SubensemblePair};
use crate::numerics::{
    entropy_bits, hermitian_eigen, hermitian_eigenvalues, rational_log2_entropy, ExactRational,
    HalfInt, HermitianMatrix, EIGENVALUE_FLOOR,
};
use crate::par::*;
use crate::states::{custom, GeneralPiState, PiState};
use crate::{Error, Result};

/// Reduced state of subensemble 1 inside one `(j1, j2)` block.
///
/// `sigma1` is indexed by `m1 = j1, j1 - 1, ..., -j1` (descending).
#[derive(Clone, Debug)]
pub struct ReducedBlock {
    pub pair: SubensemblePair,
    pub sigma1: HermitianMatrix,
    /// Eigenvalues of `sigma1`, descending, with dust below 1e-12 set to 0.
    pub spectrum: Vec<f64>,
    pub entropy: f64,
}

/// One block's share of an E_F sum.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockContribution {
    pub j1: HalfInt,
    pub j2: HalfInt,
    pub weight: ExactRational,
    pub entropy: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EfResult {
    pub ef_bits: f64,
    pub blocks: Vec<BlockContribution>,
}

impl EfResult {
    fn from_blocks(blocks: Vec<BlockContribution>) -> Self {
        let ef_bits = blocks.iter().map(|b| b.weight.to_f64() * b.entropy).sum::<f64>().max(0.0);
        EfResult { ef_bits, blocks }
    }
}

/// Probability of each qudit level `d = 2 min(j1, j2) + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DDistribution {
    pub exact: BTreeMap<u64, ExactRational>,
}

impl DDistribution {
    pub fn probability(&self, d: u64) -> f64 {
        self.exact.get(&d).map_or(0.0, ExactRational::to_f64)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.exact.iter().map(|(&d, p)| (d, p.to_f64()))
    }
}

/// Extrinsic (from the `c_M` superposition) and weighted intrinsic (inside
/// each `|J, M>`) parts of one block's entanglement.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropySplit {
    pub extrinsic: f64,
    pub intrinsic_weighted: f64,
    /// True when no subensemble basis state appears under two different `M`.
    /// Then `extrinsic + intrinsic_weighted` is the block entropy.
    pub schmidt_form: bool,
    pub block_entropy: f64,
}

fn check_split(total: u32, n: u32) -> Result<()> {
    if n == 0 || n >= total {
        return Err(Error::InvalidSplit { n, total });
    }
    Ok(())
}

fn find_pair(j: HalfInt, total: u32, n: u32, j1: HalfInt, j2: HalfInt) -> Result<SubensemblePair> {
    allowed_pairs(j, total, n)?
        .into_iter()
        .find(|p| p.j1 == j1 && p.j2 == j2)
        .ok_or(Error::PairNotAllowed { j, j1, j2 })
}

fn index_desc(j: HalfInt, m: HalfInt) -> usize {
    ((j - m).twice() / 2) as usize
}

/// Block amplitudes `psi[m1][m2] = c_{m1+m2} <j1 m1; j2 m2 | J M>`, both
/// indices descending from the stretched state.
fn block_amplitudes(state: &PiState, j1: HalfInt, j2: HalfInt) -> Result<Vec<Vec<Complex64>>> {
    let (d1, d2) = (j1.multiplicity() as usize, j2.multiplicity() as usize);
    let mut psi = vec![vec![Complex64::new(0.0, 0.0); d2]; d1];
    for (m, c) in state.support() {
        for (m1, v) in cg_row(state.total_spin(), m, j1, j2)?.iter() {
            psi[index_desc(j1, *m1)][index_desc(j2, m - *m1)] += c * v.to_f64();
        }
    }
    Ok(psi)
}

fn block_from_pair(state: &PiState, pair: SubensemblePair) -> Result<ReducedBlock> {
    let psi = block_amplitudes(state, pair.j1, pair.j2)?;
    let sigma1 = HermitianMatrix::from_upper(psi.len(), |a, b| {
        psi[a].iter().zip(&psi[b]).map(|(x, y)| x * y.conj()).sum()
    });
    let spectrum: Vec<f64> = hermitian_eigenvalues(&sigma1)?
        .into_iter()
        .map(|x| if x < EIGENVALUE_FLOOR { 0.0 } else { x })
        .collect();
    let entropy = entropy_bits(&spectrum)?;
    Ok(ReducedBlock { pair, sigma1, spectrum, entropy })
}

/// `sigma1` for one block of `state` split at `n`.
pub fn reduced_density(state: &PiState, n: u32, j1: HalfInt, j2: HalfInt) -> Result<ReducedBlock> {
    check_split(state.particles(), n)?;
    let pair = find_pair(state.total_spin(), state.particles(), n, j1, j2)?;
    block_from_pair(state, pair)
}

/// Every block of `state` at partition `n`, ascending `(j1, j2)`.
///
/// Partitions `n > N/2` are evaluated as `N - n`: the two sides of a pure
/// bipartite state have the same entropy, so only the labelling changes.
pub fn reduced_blocks(state: &PiState, n: u32) -> Result<Vec<ReducedBlock>> {
    let total = state.particles();
    check_split(total, n)?;
    let n = n.min(total - n);
    let pairs = allowed_pairs(state.total_spin(), total, n)?;
    pairs.into_par_iter().map(|p| block_from_pair(state, p)).collect()
}

/// Entanglement of formation of `state` between `n` and `N - n` spins.
pub fn ef(state: &PiState, n: u32) -> Result<EfResult> {
    let blocks = reduced_blocks(state, n)?
        .into_iter()
        .map(|b| BlockContribution { j1: b.pair.j1, j2: b.pair.j2, weight: b.pair.weight, entropy: b.entropy })
        .collect();
    Ok(EfResult::from_blocks(blocks))
}

/// E_F of the magnetization eigenstate `|J, M>` directly from squared CG
/// coefficients, which are already the Schmidt coefficients.
pub fn ef_eigenstate(total: u32, j: HalfInt, m: HalfInt, n: u32) -> Result<EfResult> {
    check_split(total, n)?;
    validate_total_spin(j, total).map_err(|_| Error::InvalidQuantumNumbers(format!("J = {j}, N = {total}")))?;
    if m.abs() > j || !m.same_parity(j) {
        return Err(Error::InvalidQuantumNumbers(format!("M = {m} is not a projection of J = {j}")));
    }
    let n = n.min(total - n);
    let pairs = allowed_pairs(j, total, n)?;
    let blocks = pairs
        .into_par_iter()
        .map(|p| {
            let row = cg_row(j, m, p.j1, p.j2)?;
            let terms: Vec<_> = row.iter().map(|(_, v)| (ExactRational::one(), v.square.clone())).collect();
            let entropy = rational_log2_entropy(&terms)?;
            Ok(BlockContribution { j1: p.j1, j2: p.j2, weight: p.weight, entropy })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EfResult::from_blocks(blocks))
}

// a log2(a / b), zero when a = 0
fn xlog_ratio(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * (a / b).log2()
    }
}

/// Closed form of E_F for a single split-off spin (`n = 1`) of `|J, M>`.
///
/// Both `j2 = J +- 1/2` branches are summed with their analytic weights; the
/// missing branch at `J = 0` or `J = N/2` has zero weight by construction.
pub fn ef_single_spin(total: u32, j: HalfInt, m: HalfInt) -> Result<f64> {
    check_split(total, 1)?;
    validate_total_spin(j, total).map_err(|_| Error::InvalidQuantumNumbers(format!("J = {j}, N = {total}")))?;
    if m.abs() > j || !m.same_parity(j) {
        return Err(Error::InvalidQuantumNumbers(format!("M = {m} is not a projection of J = {j}")));
    }
    let (nn, jj, mm) = (total as f64, j.to_f64(), m.to_f64());
    let upper = (nn / 2.0 - jj)
        * (xlog_ratio(jj - mm + 1.0, 2.0 * jj + 2.0) + xlog_ratio(jj + mm + 1.0, 2.0 * jj + 2.0));
    let lower = (nn / 2.0 + jj + 1.0) * (xlog_ratio(jj + mm, 2.0 * jj) + xlog_ratio(jj - mm, 2.0 * jj));
    Ok((-(upper + lower) / (nn * (2.0 * jj + 1.0))).max(0.0))
}

/// Distribution of qudit levels `d = 2 min(j1, j2) + 1` over the blocks.
pub fn qudit_distribution(j: HalfInt, total: u32, n: u32) -> Result<DDistribution> {
    let mut exact: BTreeMap<u64, ExactRational> = BTreeMap::new();
    for p in allowed_pairs(j, total, n)? {
        let slot = exact.entry(p.qudit_level()).or_insert_with(ExactRational::zero);
        *slot = &*slot + &p.weight;
    }
    Ok(DDistribution { exact })
}

/// Extrinsic/intrinsic decomposition of one block's entanglement.
pub fn entropy_split(state: &PiState, n: u32, j1: HalfInt, j2: HalfInt) -> Result<EntropySplit> {
    check_split(state.particles(), n)?;
    let pair = find_pair(state.total_spin(), state.particles(), n, j1, j2)?;
    let j = state.total_spin();

    let mut extrinsic = 0.0;
    let mut intrinsic_weighted = 0.0;
    let mut by_m1: BTreeMap<HalfInt, BTreeSet<HalfInt>> = BTreeMap::new();
    let mut by_m2: BTreeMap<HalfInt, BTreeSet<HalfInt>> = BTreeMap::new();
    for (m, c) in state.support() {
        let p = c.norm_sqr();
        extrinsic -= p * p.log2();
        let row = cg_row(j, m, j1, j2)?;
        let terms: Vec<_> = row.iter().map(|(_, v)| (ExactRational::one(), v.square.clone())).collect();
        intrinsic_weighted += p * rational_log2_entropy(&terms)?;
        for (m1, _) in row.iter() {
            by_m1.entry(*m1).or_default().insert(m);
            by_m2.entry(m - *m1).or_default().insert(m);
        }
    }
    let schmidt_form = by_m1.values().chain(by_m2.values()).all(|ms| ms.len() <= 1);
    let block_entropy = block_from_pair(state, pair)?.entropy;
    Ok(EntropySplit { extrinsic: extrinsic.max(0.0), intrinsic_weighted, schmidt_form, block_entropy })
}

/// Upper bound on E_F for a general PI state: each sector's density matrix
/// is split into its eigenvectors, each treated as a logically pure state.
pub fn ef_upper_bound(state: &GeneralPiState, n: u32) -> Result<f64> {
    check_split(state.particles(), n)?;
    let mut bound = 0.0;
    for sector in state.sectors() {
        if sector.probability == 0.0 {
            continue;
        }
        let eig = hermitian_eigen(&sector.rho)?;
        for (k, &mu) in eig.values.iter().enumerate() {
            if mu <= EIGENVALUE_FLOOR {
                continue;
            }
            let component = custom(state.particles(), sector.j, &eig.vector(k))?;
            bound += sector.probability * mu * ef(&component, n)?.ef_bits;
        }
    }
    Ok(bound)
}
