//! Lattice-side evaluation of projected wavefunctions.
//!
//! Three routes share the same vertex weights: B-operator transfer on
//! fixed-particle-number sectors, brute-force enumeration of all edge
//! configurations of the `N × M` grid, and the single-column contraction used
//! for the degree argument in `w_M`.
//!
//! Conventions: the auxiliary line of a B-operator enters site 1 carrying a
//! particle and leaves site `M` empty, and `B(z_N)` is the first operator to
//! act on the vacuum.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{site_weight, EdgeState, ModelParams, Site, WeightTable};
use crate::numeric::Scalar;

/// Largest lattice the brute-force enumerator accepts.
pub const ENUMERATION_MAX_M: usize = 10;
pub const ENUMERATION_MAX_N: usize = 5;

/// Largest sector dimension `C(M, n)` the transfer route will build.
pub const TRANSFER_MAX_SECTOR: u128 = 10_000;

/// Sites are tracked as bits of a `u64`.
pub const MAX_SITES: usize = 64;

/// Particle positions `1 <= x_1 < ... < x_N <= M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParticleConfig {
    positions: Vec<usize>,
    m: usize,
}

impl ParticleConfig {
    pub fn new(positions: Vec<usize>, m: usize) -> Result<Self> {
        if m > MAX_SITES {
            return Err(Error::SizeGuard(format!("M = {m} exceeds {MAX_SITES} sites")));
        }
        if positions.len() > m {
            return Err(Error::InvalidConfig(format!("{} particles do not fit on {m} sites", positions.len())));
        }
        for (i, &x) in positions.iter().enumerate() {
            if x < 1 || x > m {
                return Err(Error::InvalidConfig(format!("position {x} outside [1, {m}]")));
            }
            if i > 0 && positions[i - 1] >= x {
                return Err(Error::InvalidConfig(format!("positions must be strictly increasing, got {positions:?}")));
            }
        }
        Ok(ParticleConfig { positions, m })
    }

    pub fn from_mask(mask: u64, m: usize) -> Result<Self> {
        if m < MAX_SITES && mask >> m != 0 {
            return Err(Error::InvalidConfig(format!("mask {mask:#b} exceeds {m} sites")));
        }
        let positions = (0..m).filter(|j| mask >> j & 1 == 1).map(|j| j + 1).collect();
        ParticleConfig::new(positions, m)
    }

    /// All `C(M, N)` configurations in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<ParticleConfig> {
        fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<ParticleConfig>) {
            if left == 0 {
                out.push(ParticleConfig { positions: cur.clone(), m });
                return;
            }
            for x in start..=m + 1 - left {
                cur.push(x);
                rec(x + 1, m, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n <= m {
            rec(1, m, n, &mut Vec::with_capacity(n), &mut out);
        }
        out
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn mask(&self) -> u64 {
        self.positions.iter().fold(0, |acc, &x| acc | 1 << (x - 1))
    }

    /// `true` when the last site is occupied.
    pub fn occupies_last(&self) -> bool {
        self.positions.last() == Some(&self.m)
    }

    /// Same positions on `M - 1` sites; fails if site `M` is occupied.
    pub fn without_last_site(&self) -> Result<ParticleConfig> {
        ParticleConfig::new(self.positions.clone(), self.m.saturating_sub(1))
    }

    /// Drops the particle at site `M` and the site itself.
    pub fn without_last_particle(&self) -> Result<ParticleConfig> {
        if !self.occupies_last() {
            return Err(Error::InvalidConfig("site M is empty".into()));
        }
        ParticleConfig::new(self.positions[..self.n() - 1].to_vec(), self.m - 1)
    }
}

/// Sparse vector in the fixed-particle-number sector of `F_1 ⊗ ... ⊗ F_M`.
/// Keys are occupation bitmasks (bit `j - 1` for site `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorState {
    m: usize,
    particles: usize,
    coefficients: BTreeMap<u64, Scalar>,
}

impl SectorState {
    pub fn vacuum(m: usize) -> Self {
        let mut coefficients = BTreeMap::new();
        coefficients.insert(0, Scalar::one());
        SectorState { m, particles: 0, coefficients }
    }

    pub fn zero(m: usize, particles: usize) -> Self {
        SectorState { m, particles, coefficients: BTreeMap::new() }
    }

    /// Builds a state from `(configuration, coefficient)` pairs, all of which
    /// must carry `particles` particles on `m` sites.
    pub fn from_terms(
        m: usize,
        particles: usize,
        terms: impl IntoIterator<Item = (ParticleConfig, Scalar)>,
    ) -> Result<Self> {
        let mut state = SectorState::zero(m, particles);
        for (config, coeff) in terms {
            if config.m() != m || config.n() != particles {
                return Err(Error::InvalidConfig(format!(
                    "{:?} is not in the {particles}-particle sector on {m} sites",
                    config.positions()
                )));
            }
            state.add(config.mask(), coeff);
        }
        Ok(state)
    }

    fn add(&mut self, mask: u64, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coefficients.entry(mask).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coefficients.remove(&mask);
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn coefficient(&self, config: &ParticleConfig) -> Scalar {
        self.coefficients.get(&config.mask()).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Nonzero entries in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.coefficients.iter().map(|(&k, v)| (k, v))
    }

    pub fn support_len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn scaled(&self, factor: &Scalar) -> SectorState {
        let mut out = SectorState::zero(self.m, self.particles);
        for (&mask, coeff) in &self.coefficients {
            out.add(mask, coeff * factor);
        }
        out
    }

    /// Largest coefficient size in decimal digits.
    pub fn peak_digits(&self) -> usize {
        self.coefficients.values().map(Scalar::digits).max().unwrap_or(1)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Errors if building an `N`-particle state on `M` sites would pass through a
/// sector larger than [`TRANSFER_MAX_SECTOR`].
pub fn transfer_guard(m: usize, n: usize) -> Result<()> {
    if m > MAX_SITES {
        return Err(Error::SizeGuard(format!("M = {m} exceeds {MAX_SITES} sites")));
    }
    let widest = (0..=n.min(m)).map(|k| binomial(m, k)).max().unwrap_or(1);
    if widest > TRANSFER_MAX_SECTOR {
        return Err(Error::SizeGuard(format!("transfer sector dimension {widest} exceeds {TRANSFER_MAX_SECTOR}")));
    }
    Ok(())
}

fn edge(bit: u64) -> EdgeState {
    if bit & 1 == 1 {
        EdgeState::Particle
    } else {
        EdgeState::Hole
    }
}

/// Applies `B(z | w_1..w_M) = <0|_a T_a(z) |1>_a` to `state`.
///
/// The auxiliary line enters site 1 occupied and must leave site `M` empty;
/// by the ice rule the result has one more particle. A full sector maps to
/// the zero state.
pub fn apply_b(state: &SectorState, z: &Scalar, params: &ModelParams) -> Result<SectorState> {
    if state.m != params.m() {
        return Err(Error::Input(format!("state has {} sites but parameters have {}", state.m, params.m())));
    }
    let m = state.m;
    let mut out = SectorState::zero(m, state.particles + 1);
    if state.particles >= m {
        return Ok(out);
    }
    // Sweep all basis states through the sites together. Masks hold output
    // bits for visited sites and input bits for the rest; keying by (mask,
    // auxiliary bit) merges paths as soon as they meet.
    let mut layers: [BTreeMap<u64, Scalar>; 2] = [BTreeMap::new(), state.coefficients.clone()];
    for (j, site) in params.sites.iter().enumerate() {
        let table = WeightTable::new(z, site, &params.t);
        let bit = 1u64 << j;
        let mut next: [BTreeMap<u64, Scalar>; 2] = [BTreeMap::new(), BTreeMap::new()];
        for aux in EdgeState::BOTH {
            for (&mask, coeff) in &layers[aux.bit() as usize] {
                let q_in = edge(mask >> j);
                let total = aux.bit() + q_in.bit();
                for a_out in EdgeState::BOTH {
                    let Some(q_out) = total.checked_sub(a_out.bit()).and_then(EdgeState::from_bit) else {
                        continue;
                    };
                    let weight = table.get(aux, q_in, a_out, q_out);
                    if weight.is_zero() {
                        continue;
                    }
                    let key = if q_out == EdgeState::Particle { mask | bit } else { mask & !bit };
                    let slot = next[a_out.bit() as usize].entry(key).or_insert_with(Scalar::zero);
                    *slot += coeff * weight;
                }
            }
        }
        layers = next;
    }
    let [finished, _] = layers;
    for (mask, coeff) in finished {
        out.add(mask, coeff);
    }
    Ok(out)
}

/// The off-shell Bethe vector `B(z_1) ... B(z_N) |Ω>`.
pub fn bethe_vector(params: &ModelParams) -> Result<SectorState> {
    transfer_guard(params.m(), params.n())?;
    let mut state = SectorState::vacuum(params.m());
    for z in params.z.iter().rev() {
        state = apply_b(&state, z, params)?;
    }
    Ok(state)
}

fn check_shape(params: &ModelParams, config: &ParticleConfig) -> Result<()> {
    if config.m() != params.m() || config.n() != params.n() {
        return Err(Error::InvalidConfig(format!(
            "configuration with N = {}, M = {} does not match parameters with N = {}, M = {}",
            config.n(),
            config.m(),
            params.n(),
            params.m()
        )));
    }
    Ok(())
}

/// `W_{M,N}(z | w | x) = <x_1 ... x_N | B(z_1) ... B(z_N) |Ω>` via transfer.
pub fn projected_wavefunction(params: &ModelParams, config: &ParticleConfig) -> Result<Scalar> {
    check_shape(params, config)?;
    Ok(bethe_vector(params)?.coefficient(config))
}

/// Result of a brute-force lattice sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub value: Scalar,
    /// Edge assignments satisfying the ice rule and the boundary.
    pub configurations: u64,
    /// Largest single-configuration weight, in decimal digits.
    pub peak_digits: usize,
}

/// Sum over every edge assignment of the `N × M` grid, by depth-first
/// assignment with ice-rule pruning.
///
/// Boundary: left edges occupied, right edges empty, bottom edges empty, top
/// edges occupied exactly at the configuration. Row `i` carries `z_i`; row
/// `N` sits at the bottom.
pub fn enumerate_configurations(params: &ModelParams, config: &ParticleConfig) -> Result<Scalar> {
    Ok(enumerate_with_summary(params, config)?.value)
}

pub fn enumerate_with_summary(params: &ModelParams, config: &ParticleConfig) -> Result<EnumerationSummary> {
    check_shape(params, config)?;
    let (m, n) = (params.m(), params.n());
    if m > ENUMERATION_MAX_M || n > ENUMERATION_MAX_N {
        return Err(Error::SizeGuard(format!(
            "enumeration limited to M <= {ENUMERATION_MAX_M}, N <= {ENUMERATION_MAX_N} (got M = {m}, N = {n})"
        )));
    }
    let tables =
        params.z.iter().map(|z| params.sites.iter().map(|s| WeightTable::new(z, s, &params.t)).collect()).collect();
    let mut walk = Enumerator {
        params,
        tables,
        top: config.mask(),
        vertical: vec![EdgeState::Hole; m],
        summary: EnumerationSummary { value: Scalar::zero(), configurations: 0, peak_digits: 1 },
    };
    walk.visit(0, EdgeState::Particle, Scalar::one());
    Ok(walk.summary)
}

struct Enumerator<'a> {
    params: &'a ModelParams,
    // tables[row - 1][col]
    tables: Vec<Vec<WeightTable>>,
    top: u64,
    // current vertical edges: below the vertex being placed for columns not
    // yet visited in this row, above it for visited ones
    vertical: Vec<EdgeState>,
    summary: EnumerationSummary,
}

impl Enumerator<'_> {
    fn visit(&mut self, vertex: usize, aux: EdgeState, acc: Scalar) {
        let (m, n) = (self.params.m(), self.params.n());
        if vertex == m * n {
            self.summary.configurations += 1;
            self.summary.peak_digits = self.summary.peak_digits.max(acc.digits());
            self.summary.value += acc;
            return;
        }
        // rows are filled bottom-up, i.e. row N first
        let row = n - vertex / m;
        let col = vertex % m;
        let aux = if col == 0 { EdgeState::Particle } else { aux };
        let q_in = self.vertical[col];
        let total = aux.bit() + q_in.bit();
        for a_out in EdgeState::BOTH {
            let Some(q_out) = total.checked_sub(a_out.bit()).and_then(EdgeState::from_bit) else {
                continue;
            };
            if col + 1 == m && a_out == EdgeState::Particle {
                continue;
            }
            if row == 1 && q_out != edge(self.top >> col) {
                continue;
            }
            let weight = self.tables[row - 1][col].get(aux, q_in, a_out, q_out);
            let next = &acc * weight;
            self.vertical[col] = q_out;
            self.visit(vertex + 1, a_out, next);
            self.vertical[col] = q_in;
        }
    }
}

/// Contracts one column of the vertical transfer matrix at site `M`:
/// `<0|^{⊗N} <1|_M T^N_M |0^{j-1}, 1, 0^{N-j}> |0>_M`.
///
/// The quantum bit enters at the bottom (row `N`) empty and threads up to
/// row 1; every row's auxiliary edge leaves empty.
pub fn column_amplitude(j: usize, z: &[Scalar], site: &Site, t: &Scalar) -> Result<Scalar> {
    let n = z.len();
    if j < 1 || j > n {
        return Err(Error::OutOfRange { what: "j", value: j, min: 1, max: n });
    }
    let mut quantum = EdgeState::Hole;
    let mut amplitude = Scalar::one();
    for row in (1..=n).rev() {
        let a_in = if row == j { EdgeState::Particle } else { EdgeState::Hole };
        let Some(q_out) = EdgeState::from_bit(a_in.bit() + quantum.bit()) else {
            return Ok(Scalar::zero());
        };
        amplitude *= site_weight(a_in, quantum, EdgeState::Hole, q_out, &z[row - 1], site, t);
        quantum = q_out;
    }
    if quantum != EdgeState::Particle {
        return Ok(Scalar::zero());
    }
    Ok(amplitude)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn params(t: i64, z: &[i64], sites: &[(i64, i64, i64)]) -> ModelParams {
        ModelParams::new(
            s(t),
            z.iter().map(|&v| s(v)).collect(),
            sites.iter().map(|&(w, a, g)| Site::new(s(w), s(a), s(g))).collect(),
        )
        .unwrap()
    }

    fn cfg(x: &[usize], m: usize) -> ParticleConfig {
        ParticleConfig::new(x.to_vec(), m).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(ParticleConfig::new(vec![2, 1], 3).is_err());
        assert!(ParticleConfig::new(vec![0], 3).is_err());
        assert!(ParticleConfig::new(vec![4], 3).is_err());
        assert!(ParticleConfig::new(vec![1, 1], 3).is_err());
        assert!(ParticleConfig::new(vec![1, 2, 3, 4], 3).is_err());
        let c = cfg(&[1, 3], 3);
        assert_eq!(c.mask(), 0b101);
        assert_eq!(ParticleConfig::from_mask(0b101, 3).unwrap(), c);
        assert!(c.occupies_last());
        assert_eq!(c.without_last_particle().unwrap(), cfg(&[1], 2));
        assert!(c.without_last_site().is_err());
        assert_eq!(ParticleConfig::all(4, 2).len(), 6);
        assert_eq!(ParticleConfig::all(3, 0), vec![cfg(&[], 3)]);
    }

    #[test]
    fn apply_b_single_site() {
        let p = params(4, &[3], &[(7, 2, 5)]);
        let out = apply_b(&SectorState::vacuum(1), &s(3), &p).unwrap();
        assert_eq!(out.particles(), 1);
        assert_eq!(out.coefficient(&cfg(&[1], 1)), s(7));
        assert_eq!(out.support_len(), 1);
    }

    #[test]
    fn apply_b_two_sites() {
        let p = params(2, &[1], &[(2, 1, 0), (3, 4, 6)]);
        let out = apply_b(&SectorState::vacuum(2), &s(1), &p).unwrap();
        assert_eq!(out.coefficient(&cfg(&[2], 2)), s(9));
    }

    #[test]
    fn apply_b_full_sector_is_zero() {
        let p = params(2, &[1], &[(2, 1, 0)]);
        let full = SectorState::from_terms(1, 1, [(cfg(&[1], 1), s(3))]).unwrap();
        let out = apply_b(&full, &s(1), &p).unwrap();
        assert_eq!(out.support_len(), 0);
        assert_eq!(out.particles(), 2);
    }

    #[test]
    fn wavefunction_examples() {
        let p = params(1, &[1], &[(7, 0, 0)]);
        assert_eq!(projected_wavefunction(&p, &cfg(&[1], 1)).unwrap(), s(7));
        assert_eq!(enumerate_configurations(&p, &cfg(&[1], 1)).unwrap(), s(7));

        let p = params(1, &[1], &[(2, 3, 0), (3, 8, 5)]);
        assert_eq!(projected_wavefunction(&p, &cfg(&[1], 2)).unwrap(), s(-4));
        assert_eq!(enumerate_configurations(&p, &cfg(&[1], 2)).unwrap(), s(-4));

        let p = params(1, &[], &[(2, 3, 0), (3, 8, 5)]);
        assert_eq!(projected_wavefunction(&p, &cfg(&[], 2)).unwrap(), s(1));
        let summary = enumerate_with_summary(&p, &cfg(&[], 2)).unwrap();
        assert_eq!(summary.value, s(1));
        assert_eq!(summary.configurations, 1);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let p = params(1, &[1, 2], &[(1, 0, 0), (1, 0, 0), (1, 0, 0)]);
        assert!(projected_wavefunction(&p, &cfg(&[1], 3)).is_err());
        assert!(enumerate_configurations(&p, &cfg(&[1, 2], 2)).is_err());
    }

    #[test]
    fn enumeration_size_guard() {
        let sites = vec![(1, 0, 0); 11];
        let p = params(1, &[1], &sites);
        let err = enumerate_configurations(&p, &cfg(&[3], 11)).unwrap_err();
        assert!(err.is_size_guard());
    }

    #[test]
    fn transfer_guard_limits_sector() {
        assert!(transfer_guard(8, 4).is_ok());
        assert!(transfer_guard(30, 10).unwrap_err().is_size_guard());
    }

    #[test]
    fn column_amplitude_examples() {
        let site = Site::new(s(2), s(9), s(1));
        let t = s(3);
        assert_eq!(column_amplitude(1, &[s(5)], &site, &t).unwrap(), s(2));
        assert_eq!(column_amplitude(2, &[s(1), s(1)], &site, &t).unwrap(), s(14));
        assert_eq!(column_amplitude(1, &[s(1), s(1)], &site, &t).unwrap(), s(2));
        assert!(column_amplitude(0, &[s(1)], &site, &t).is_err());
        assert!(column_amplitude(2, &[s(1)], &site, &t).is_err());
    }
}
