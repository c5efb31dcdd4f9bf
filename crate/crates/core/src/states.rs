//! Logically pure PI states and the general PI-state container.
//!
//! A [`PiState`] holds the amplitudes `c_M` of one total-spin sector `J`,
//! indexed from `M = -J` upward. Every degenerate copy of the sector carries
//! the same amplitudes, so this vector is the whole state.

use num_bigint::BigUint;
use num_complex::Complex64;

use crate::angular::validate_total_spin;
use crate::numerics::{ExactRational, HalfInt, HermitianMatrix};
use crate::{Error, Result};

const NORM_TOLERANCE: f64 = 1e-12;
const MIN_NORM: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct PiState {
    particles: u32,
    j: HalfInt,
    amplitudes: Vec<Complex64>,
}

fn check_projection(j: HalfInt, m: HalfInt) -> Result<()> {
    if m.abs() > j || !m.same_parity(j) {
        return Err(Error::InvalidQuantumNumbers(format!("M = {m} is not a projection of J = {j}")));
    }
    Ok(())
}

fn validate(particles: u32, j: HalfInt) -> Result<()> {
    validate_total_spin(j, particles).map_err(|_| {
        Error::InvalidQuantumNumbers(format!("J = {j} is not a valid total spin for N = {particles}"))
    })
}

impl PiState {
    /// Wraps amplitudes that must already be normalized to within 1e-12.
    pub fn new(particles: u32, j: HalfInt, amplitudes: Vec<Complex64>) -> Result<Self> {
        validate(particles, j)?;
        if amplitudes.len() as i64 != j.multiplicity() {
            return Err(Error::InvalidState(format!(
                "{} amplitudes given, J = {j} needs {}",
                amplitudes.len(),
                j.multiplicity()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!("squared norm {norm} is not 1")));
        }
        Ok(PiState { particles, j, amplitudes })
    }

    pub fn particles(&self) -> u32 {
        self.particles
    }

    pub fn total_spin(&self) -> HalfInt {
        self.j
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `c_M`, or zero outside `-J..=J`.
    pub fn amplitude(&self, m: HalfInt) -> Complex64 {
        let idx = (m + self.j).twice();
        if idx < 0 || idx % 2 != 0 || m.abs() > self.j {
            return Complex64::new(0.0, 0.0);
        }
        self.amplitudes[(idx / 2) as usize]
    }

    /// `(M, c_M)` pairs in ascending `M`, zero amplitudes included.
    pub fn components(&self) -> impl Iterator<Item = (HalfInt, Complex64)> + '_ {
        self.j.projections().zip(self.amplitudes.iter().copied())
    }

    /// Projections with nonzero amplitude.
    pub fn support(&self) -> impl Iterator<Item = (HalfInt, Complex64)> + '_ {
        self.components().filter(|(_, c)| c.norm_sqr() > 0.0)
    }

    /// The single `M` if the state is a magnetization eigenstate.
    pub fn as_eigenstate(&self) -> Option<HalfInt> {
        let mut support = self.support();
        let (m, _) = support.next()?;
        support.next().is_none().then_some(m)
    }
}

/// `|J, M>` in every degenerate copy.
pub fn eigenstate(particles: u32, j: HalfInt, m: HalfInt) -> Result<PiState> {
    validate(particles, j)?;
    check_projection(j, m)?;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); j.multiplicity() as usize];
    amplitudes[((m + j).twice() / 2) as usize] = Complex64::new(1.0, 0.0);
    Ok(PiState { particles, j, amplitudes })
}

/// `(|J, J> + |J, -J>) / sqrt 2`.
pub fn ghz_like(particles: u32, j: HalfInt) -> Result<PiState> {
    validate(particles, j)?;
    if j == HalfInt::ZERO {
        return Err(Error::DegenerateGhz);
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); j.multiplicity() as usize];
    let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amplitudes[0] = c;
    *amplitudes.last_mut().unwrap() = c;
    Ok(PiState { particles, j, amplitudes })
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Stationary state of the squeezed collective dissipator with squeezing
/// `t = tanh r`.
///
/// `c_{-J+2k} ∝ C(J,k) C(2J,2k)^{-1/2} t^k` and odd offsets vanish. The
/// squared amplitudes are formed and normalized as exact rationals (the float
/// `t` is taken at its exact binary value); one square root per amplitude at
/// the end. All amplitudes are real and non-negative.
pub fn squeezed(particles: u32, j: HalfInt, t: f64) -> Result<PiState> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidSqueezing(t));
    }
    if !particles.is_multiple_of(2) {
        return Err(Error::InvalidQuantumNumbers(format!("squeezed states need even N, got {particles}")));
    }
    validate(particles, j)?;
    let jj = j.as_integer().ok_or_else(|| {
        Error::InvalidQuantumNumbers(format!("squeezed states need integer J, got {j}"))
    })? as u64;

    let t_exact = ExactRational::from_f64(t).expect("t is finite");
    let t_sq = &t_exact * &t_exact;
    let mut t_pow = ExactRational::one();
    let mut squares = Vec::with_capacity(jj as usize + 1);
    for k in 0..=jj {
        let b = ExactRational::from_biguint(&binomial(jj, k));
        let weight = &(&b * &b) / &ExactRational::from_biguint(&binomial(2 * jj, 2 * k));
        squares.push(&weight * &t_pow);
        t_pow = &t_pow * &t_sq;
    }
    let total: ExactRational = squares.iter().sum();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); j.multiplicity() as usize];
    for (k, sq) in squares.iter().enumerate() {
        amplitudes[2 * k] = Complex64::new((sq / &total).to_f64().sqrt(), 0.0);
    }
    Ok(PiState { particles, j, amplitudes })
}

/// Normalized copy of arbitrary amplitudes (ascending `M`).
pub fn custom(particles: u32, j: HalfInt, amplitudes: &[Complex64]) -> Result<PiState> {
    validate(particles, j)?;
    if amplitudes.len() as i64 != j.multiplicity() {
        return Err(Error::InvalidState(format!(
            "{} amplitudes given, J = {j} needs {}",
            amplitudes.len(),
            j.multiplicity()
        )));
    }
    let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if !norm.is_finite() || norm < MIN_NORM {
        return Err(Error::ZeroState(norm));
    }
    Ok(PiState { particles, j, amplitudes: amplitudes.iter().map(|c| c / norm).collect() })
}

/// Flips every spin: `c_M -> c_{-M}`. The global sign picked up by the flip
/// is dropped.
pub fn spin_flip(state: &PiState) -> PiState {
    let mut amplitudes = state.amplitudes.clone();
    amplitudes.reverse();
    PiState { amplitudes, ..state.clone() }
}

/// Parses `"re[,im] re[,im] ..."` into complex amplitudes.
pub fn parse_amplitudes(text: &str) -> Result<Vec<Complex64>> {
    text.split_whitespace()
        .map(|tok| {
            let bad = || Error::InvalidState(format!("cannot parse amplitude {tok:?}"));
            let (re, im) = match tok.split_once(',') {
                Some((re, im)) => (re, im),
                None => (tok, "0"),
            };
            let re: f64 = re.parse().map_err(|_| bad())?;
            let im: f64 = im.parse().map_err(|_| bad())?;
            if !re.is_finite() || !im.is_finite() {
                return Err(bad());
            }
            Ok(Complex64::new(re, im))
        })
        .collect()
}

/// One total-spin sector of a general PI state.
#[derive(Clone, Debug)]
pub struct Sector {
    pub j: HalfInt,
    pub probability: f64,
    pub rho: HermitianMatrix,
}

/// A general PI state: a mixture over `J` sectors, each with its own
/// `(2J+1)`-dimensional density matrix.
#[derive(Clone, Debug)]
pub struct GeneralPiState {
    particles: u32,
    sectors: Vec<Sector>,
}

impl GeneralPiState {
    pub fn new(particles: u32, sectors: Vec<Sector>) -> Result<Self> {
        let mut total = 0.0;
        for s in &sectors {
            validate(particles, s.j)?;
            if s.probability < 0.0 {
                return Err(Error::NegativeProbability(s.probability));
            }
            if s.rho.dim() as i64 != s.j.multiplicity() {
                return Err(Error::InvalidState(format!("rho for J = {} has dimension {}", s.j, s.rho.dim())));
            }
            if (s.rho.trace() - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidState(format!("rho for J = {} has trace {}", s.j, s.rho.trace())));
            }
            let smallest = crate::numerics::hermitian_eigenvalues(&s.rho)?.last().copied().unwrap_or(0.0);
            if smallest < -1e-10 {
                return Err(Error::InvalidState(format!("rho for J = {} is not PSD ({smallest})", s.j)));
            }
            total += s.probability;
        }
        if (total - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NonNormalized { sum: total });
        }
        Ok(GeneralPiState { particles, sectors })
    }

    /// A single sector holding `|psi><psi|`.
    pub fn from_pure(state: &PiState) -> Self {
        let c = state.amplitudes();
        let rho = HermitianMatrix::from_upper(c.len(), |a, b| c[a] * c[b].conj());
        GeneralPiState {
            particles: state.particles(),
            sectors: vec![Sector { j: state.total_spin(), probability: 1.0, rho }],
        }
    }

    pub fn particles(&self) -> u32 {
        self.particles
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn re(state: &PiState) -> Vec<f64> {
        state.amplitudes().iter().map(|c| c.re).collect()
    }

    #[test]
    fn eigenstate_examples() {
        assert_eq!(re(&eigenstate(4, h(4), h(4)).unwrap()), vec![0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(re(&eigenstate(3, h(1), h(-1)).unwrap()), vec![1.0, 0.0]);
        assert!(eigenstate(4, h(3), h(1)).is_err());
        assert!(eigenstate(4, h(2), h(1)).is_err());
        assert!(eigenstate(4, h(2), h(4)).is_err());
    }

    #[test]
    fn ghz_examples() {
        let s = 0.5f64.sqrt();
        assert_eq!(re(&ghz_like(4, h(4)).unwrap()), vec![s, 0.0, 0.0, 0.0, s]);
        assert_eq!(re(&ghz_like(2, h(2)).unwrap()), vec![s, 0.0, s]);
        assert_eq!(ghz_like(4, h(0)), Err(Error::DegenerateGhz));
    }

    #[test]
    fn squeezed_examples() {
        let s = squeezed(10, h(4), 0.0).unwrap();
        assert_eq!(s, eigenstate(10, h(4), h(-4)).unwrap());

        let s = squeezed(30, h(6), 1.0).unwrap();
        let a = re(&s);
        for (x, y) in a.iter().zip(a.iter().rev()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-15);
        }

        // k = 1, J = 1: C(1,1) C(2,2)^{-1/2} t = 1/2 against c_{-1} = 1
        let s = squeezed(4, h(2), 0.5).unwrap();
        let a = re(&s);
        assert_eq!(a[1], 0.0);
        assert_abs_diff_eq!(a[2] / a[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(a[0] * a[0] + a[2] * a[2], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn squeezed_errors() {
        assert_eq!(squeezed(4, h(2), 1.5), Err(Error::InvalidSqueezing(1.5)));
        assert!(matches!(squeezed(5, h(1), 0.5), Err(Error::InvalidQuantumNumbers(_))));
        assert!(matches!(squeezed(6, h(3), 0.5), Err(Error::InvalidQuantumNumbers(_))));
    }

    // Unnormalized ratio c_{-J+2k} / c_{-J} = C(J,k) C(2J,2k)^{-1/2} t^k,
    // evaluated here in floats from scratch.
    #[test]
    fn squeezed_ratios() {
        fn choose(n: u64, k: u64) -> f64 {
            (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
        }
        for jj in 1..=8u64 {
            for &t in &[0.25, 0.5, 0.9, 1.0] {
                let s = squeezed(20, h(2 * jj as i64), t).unwrap();
                let a = re(&s);
                for k in 0..=jj {
                    let expected = choose(jj, k) / choose(2 * jj, 2 * k).sqrt() * t.powi(k as i32);
                    assert!((a[2 * k as usize] / a[0] - expected).abs() <= 1e-12 * expected.max(1.0));
                    if k < jj {
                        assert_eq!(a[2 * k as usize + 1], 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn squeezed_large_j_is_finite() {
        let s = squeezed(200, h(100), 1.0).unwrap();
        let norm: f64 = s.amplitudes().iter().map(|c| c.norm_sqr()).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
        assert!(s.amplitudes().iter().all(|c| c.re.is_finite() && c.re > 0.0 || c.re == 0.0));
        assert!(s.amplitudes()[50].re > 0.0);
    }

    #[test]
    fn custom_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(custom(2, h(2), &[one, zero, zero]).unwrap(), eigenstate(2, h(2), h(-2)).unwrap());
        assert_eq!(custom(2, h(2), &[one * 2.0, zero, zero]).unwrap(), eigenstate(2, h(2), h(-2)).unwrap());
        assert!(matches!(custom(2, h(2), &[zero; 3]), Err(Error::ZeroState(_))));
        assert!(custom(2, h(2), &[one; 2]).is_err());
    }

    #[test]
    fn flip_examples() {
        let e = eigenstate(6, h(4), h(2)).unwrap();
        assert_eq!(spin_flip(&e), eigenstate(6, h(4), h(-2)).unwrap());
        let g = ghz_like(6, h(4)).unwrap();
        assert_eq!(spin_flip(&g), g);
        let s = squeezed(30, h(8), 1.0).unwrap();
        let f = spin_flip(&s);
        for (a, b) in s.amplitudes().iter().zip(f.amplitudes()) {
            assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-15);
        }
    }

    #[test]
    fn parse_amplitude_text() {
        let v = parse_amplitudes("1 0,0.5 -2e-1,3").unwrap();
        assert_eq!(v, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.5), Complex64::new(-0.2, 3.0)]);
        assert!(parse_amplitudes("1 x").is_err());
        assert!(parse_amplitudes("nan").is_err());
    }

    #[test]
    fn general_state_validation() {
        let rho = HermitianMatrix::from_real_diagonal(&[0.5, 0.5, 0.0]);
        let ok = GeneralPiState::new(2, vec![Sector { j: h(2), probability: 1.0, rho: rho.clone() }]);
        assert!(ok.is_ok());
        let bad_p = GeneralPiState::new(2, vec![Sector { j: h(2), probability: 0.7, rho: rho.clone() }]);
        assert!(bad_p.is_err());
        let bad_dim = GeneralPiState::new(2, vec![Sector { j: h(0), probability: 1.0, rho }]);
        assert!(bad_dim.is_err());
        let not_psd = HermitianMatrix::from_real_diagonal(&[1.5, -0.5, 0.0]);
        assert!(GeneralPiState::new(2, vec![Sector { j: h(2), probability: 1.0, rho: not_psd }]).is_err());
    }

    fn any_state() -> impl Strategy<Value = PiState> {
        (2u32..30).prop_flat_map(|n| {
            let jt = (n % 2) as i64..=n as i64;
            (Just(n), jt.prop_filter("parity", move |t| (n as i64 - t) % 2 == 0))
        })
        .prop_flat_map(|(n, t)| {
            let len = (t + 1) as usize;
            (Just(n), Just(t), prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len))
        })
        .prop_filter_map("nonzero", |(n, t, v)| {
            let amps: Vec<_> = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
            custom(n, HalfInt::from_twice(t), &amps).ok()
        })
    }

    proptest! {
        #[test]
        fn builders_are_normalized(state in any_state()) {
            let norm: f64 = state.amplitudes().iter().map(|c| c.norm_sqr()).sum();
            prop_assert!((norm - 1.0).abs() <= 1e-12);
            let flipped = spin_flip(&state);
            let norm_f: f64 = flipped.amplitudes().iter().map(|c| c.norm_sqr()).sum();
            prop_assert!((norm - norm_f).abs() <= 1e-15);
            prop_assert_eq!(spin_flip(&flipped), state);
        }
    }
}
