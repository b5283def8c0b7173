//! Closed-form side: generalized factorial Schur functions and the product
//! formula for projected wavefunctions, together with tableau oracles for the
//! factorial Schur and Schur specializations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ParticleConfig;
use crate::model::ModelParams;
use crate::numeric::Scalar;

/// Largest `N` for the `N!`-term symmetrized sum.
pub const SYMMETRIZED_MAX_N: usize = 9;

/// Limits for tableau enumeration in the oracles.
pub const TABLEAU_MAX_BOXES: usize = 20;
pub const TABLEAU_MAX_N: usize = 8;

/// Partition `λ_1 >= ... >= λ_N >= 0` fitting in an `N × (M - N)` box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct YoungDiagram {
    parts: Vec<usize>,
    width: usize,
}

impl YoungDiagram {
    /// `width` is the box bound `M - N`.
    pub fn new(parts: Vec<usize>, width: usize) -> Result<Self> {
        if parts.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.first().is_some_and(|&p| p > width) {
            return Err(Error::InvalidPartition(format!("{parts:?} does not fit in width {width}")));
        }
        Ok(YoungDiagram { parts, width })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `μ = λ + δ` with `δ = (N - 1, ..., 0)`.
    pub fn shifted(&self) -> MuIndex {
        let n = self.parts.len();
        MuIndex(self.parts.iter().enumerate().map(|(j, &p)| p + n - 1 - j).collect())
    }

    /// Every partition with `n` parts in an `n × width` box, in reverse
    /// lexicographic order.
    pub fn all_in_box(n: usize, width: usize) -> Vec<YoungDiagram> {
        fn rec(left: usize, cap: usize, width: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            if left == 0 {
                out.push(YoungDiagram { parts: cur.clone(), width });
                return;
            }
            for p in (0..=cap).rev() {
                cur.push(p);
                rec(left - 1, p, width, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, width, width, &mut Vec::new(), &mut out);
        out
    }
}

/// Strictly decreasing exponents `μ_j = λ_j + N - j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MuIndex(Vec<usize>);

impl MuIndex {
    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

/// `λ_j = x_{N-j+1} - (N - j + 1)`.
pub fn config_to_partition(config: &ParticleConfig) -> YoungDiagram {
    let n = config.n();
    let x = config.positions();
    let parts = (1..=n).map(|j| x[n - j] - (n - j + 1)).collect();
    YoungDiagram { parts, width: config.m() - n }
}

/// Inverse of [`config_to_partition`]: `x_i = λ_{N-i+1} + i`.
pub fn partition_to_config(lambda: &YoungDiagram) -> Result<ParticleConfig> {
    let n = lambda.len();
    let positions = (1..=n).map(|i| lambda.parts[n - i] + i).collect();
    ParticleConfig::new(positions, lambda.width + n)
}

/// `f_μ(z) = w_{μ+1} ∏_{j<=μ} {(1 - α_j γ_j) z + α_j w_j} ∏_{j>=μ+2} (w_j - γ_j z)`.
pub fn f_factor(mu: usize, z: &Scalar, params: &ModelParams) -> Result<Scalar> {
    let m = params.m();
    if m == 0 || mu > m - 1 {
        return Err(Error::OutOfRange { what: "mu", value: mu, min: 0, max: m.saturating_sub(1) });
    }
    let sites = &params.sites;
    let mut value = sites[mu].w.clone();
    for site in &sites[..mu] {
        value *= site.pass_weight(z);
    }
    for site in &sites[mu + 1..] {
        value *= site.empty_weight(z);
    }
    Ok(value)
}

/// `f_μ(z)` for every `μ` in `0..M`, from prefix and suffix products.
pub fn f_factors(z: &Scalar, params: &ModelParams) -> Vec<Scalar> {
    let sites = &params.sites;
    let m = sites.len();
    // prefix[μ] = ∏_{j<=μ} pass, suffix[μ] = ∏_{j>=μ+2} empty (1-based j)
    let mut prefix = Vec::with_capacity(m);
    let mut acc = Scalar::one();
    for site in sites {
        prefix.push(acc.clone());
        acc *= site.pass_weight(z);
    }
    let mut suffix = vec![Scalar::one(); m];
    let mut acc = Scalar::one();
    for mu in (0..m).rev() {
        suffix[mu] = acc.clone();
        acc *= sites[mu].empty_weight(z);
    }
    (0..m).map(|mu| &sites[mu].w * &prefix[mu] * &suffix[mu]).collect()
}

/// A value together with the size of the largest intermediate it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Traced {
    pub value: Scalar,
    pub peak_digits: usize,
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<Scalar>]) -> Result<Scalar> {
    Ok(determinant_traced(matrix)?.value)
}

pub fn determinant_traced(matrix: &[Vec<Scalar>]) -> Result<Traced> {
    let n = matrix.len();
    for (row, entries) in matrix.iter().enumerate() {
        if entries.len() != n {
            return Err(Error::NonSquare { rows: n, row, cols: entries.len() });
        }
    }
    let mut a: Vec<Vec<Scalar>> = matrix.to_vec();
    let mut peak = a.iter().flatten().map(Scalar::digits).max().unwrap_or(1);
    let mut negate = false;
    let mut prev = Scalar::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(Traced { value: Scalar::zero(), peak_digits: peak });
            };
            a.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let entry = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                peak = peak.max(entry.digits());
                a[i][j] = entry;
            }
        }
        prev = a[k][k].clone();
    }
    let value = if n == 0 { Scalar::one() } else { a[n - 1][n - 1].clone() };
    Ok(Traced { value: if negate { -value } else { value }, peak_digits: peak })
}

fn check_partition_shape(params: &ModelParams, lambda: &YoungDiagram) -> Result<()> {
    let (m, n) = (params.m(), params.n());
    if lambda.len() != n || lambda.width != m - n {
        return Err(Error::InvalidPartition(format!(
            "{:?} in width {} does not match N = {n}, M = {m}",
            lambda.parts, lambda.width
        )));
    }
    Ok(())
}

/// `∏_{j<k} (z_j - z_k)`.
fn alternant(z: &[Scalar]) -> Scalar {
    let mut out = Scalar::one();
    for j in 0..z.len() {
        for k in j + 1..z.len() {
            out *= &z[j] - &z[k];
        }
    }
    out
}

/// `det_N(f_{μ_j}(z_k)) / ∏_{j<k} (z_j - z_k)` with `μ = λ + δ`.
pub fn generalized_schur_det(params: &ModelParams, lambda: &YoungDiagram) -> Result<Scalar> {
    Ok(generalized_schur_det_traced(params, lambda)?.value)
}

pub fn generalized_schur_det_traced(params: &ModelParams, lambda: &YoungDiagram) -> Result<Traced> {
    params.require_distinct_z()?;
    check_partition_shape(params, lambda)?;
    let mu = lambda.shifted();
    let columns: Vec<Vec<Scalar>> = params.z.iter().map(|z| f_factors(z, params)).collect();
    let matrix: Vec<Vec<Scalar>> =
        mu.values().iter().map(|&mu_j| columns.iter().map(|col| col[mu_j].clone()).collect()).collect();
    let det = determinant_traced(&matrix)?;
    let value = det.value / alternant(&params.z);
    Ok(Traced { peak_digits: det.peak_digits.max(value.digits()), value })
}

fn check_config_shape(params: &ModelParams, config: &ParticleConfig) -> Result<()> {
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

/// Steps `perm` to its lexicographic successor; returns the sign change, or
/// `None` after the last permutation.
fn next_permutation(perm: &mut [usize]) -> Option<bool> {
    let n = perm.len();
    let i = (1..n).rev().find(|&i| perm[i - 1] < perm[i])? - 1;
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i])?;
    perm.swap(i, j);
    perm[i + 1..].reverse();
    let reversed = n - i - 1;
    // one transposition plus floor(len / 2) from the reversal
    Some((1 + reversed / 2) % 2 == 1)
}

/// The symmetrized sum over `S_N`:
/// `∏ w_{x_j} / ∏_{j<k}(z_k - z_j) · Σ_σ sgn(σ) ∏_j ∏_{k>x_j}(w_k - γ_k z_{σ(j)}) ∏_{k<x_j}{(1 - α_k γ_k) z_{σ(j)} + α_k w_k}`.
pub fn generalized_schur_sum(params: &ModelParams, config: &ParticleConfig) -> Result<Scalar> {
    Ok(generalized_schur_sum_traced(params, config)?.value)
}

pub fn generalized_schur_sum_traced(params: &ModelParams, config: &ParticleConfig) -> Result<Traced> {
    check_config_shape(params, config)?;
    params.require_distinct_z()?;
    let n = params.n();
    if n > SYMMETRIZED_MAX_N {
        return Err(Error::SizeGuard(format!("symmetrized sum limited to N <= {SYMMETRIZED_MAX_N} (got N = {n})")));
    }
    let sites = &params.sites;
    let x = config.positions();
    // row j, column i: the σ-dependent product for particle j carrying z_i
    let factors: Vec<Vec<Scalar>> = x
        .iter()
        .map(|&xj| {
            params
                .z
                .iter()
                .map(|z| {
                    let right: Scalar = sites[xj..].iter().map(|s| s.empty_weight(z)).product();
                    let left: Scalar = sites[..xj - 1].iter().map(|s| s.pass_weight(z)).product();
                    right * left
                })
                .collect()
        })
        .collect();

    let mut perm: Vec<usize> = (0..n).collect();
    let mut odd = false;
    let mut sum = Scalar::zero();
    let mut peak = 1;
    loop {
        let term: Scalar = perm.iter().enumerate().map(|(j, &i)| &factors[j][i]).product();
        peak = peak.max(term.digits());
        if odd {
            sum -= &term;
        } else {
            sum += &term;
        }
        match next_permutation(&mut perm) {
            Some(flip) => odd ^= flip,
            None => break,
        }
    }

    let weights: Scalar = x.iter().map(|&xj| &sites[xj - 1].w).product();
    let mut denominator = Scalar::one();
    for j in 0..n {
        for k in j + 1..n {
            denominator *= &params.z[k] - &params.z[j];
        }
    }
    let value = weights * sum / denominator;
    Ok(Traced { peak_digits: peak.max(value.digits()), value })
}

/// `∏_{j<k} (z_j + t z_k)`.
pub fn exchange_prefactor(params: &ModelParams) -> Scalar {
    let z = &params.z;
    let mut out = Scalar::one();
    for j in 0..z.len() {
        for k in j + 1..z.len() {
            out *= &z[j] + &params.t * &z[k];
        }
    }
    out
}

/// Closed form `∏_{j<k} (z_j + t z_k) · F(z | w | x)` of the projected
/// wavefunction, with `F` evaluated through the determinant.
pub fn theorem_rhs(params: &ModelParams, config: &ParticleConfig) -> Result<Scalar> {
    Ok(theorem_rhs_traced(params, config)?.value)
}

pub fn theorem_rhs_traced(params: &ModelParams, config: &ParticleConfig) -> Result<Traced> {
    check_config_shape(params, config)?;
    let schur = generalized_schur_det_traced(params, &config_to_partition(config))?;
    let value = exchange_prefactor(params) * schur.value;
    Ok(Traced { peak_digits: schur.peak_digits.max(value.digits()), value })
}

/// Semistandard tableaux of shape `λ` with entries in `1..=n`, row-major.
fn for_each_ssyt(lambda: &[usize], n: usize, mut visit: impl FnMut(&[Vec<usize>])) {
    fn fill(
        lambda: &[usize],
        n: usize,
        row: usize,
        col: usize,
        tab: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        if row == lambda.len() || lambda[row] == 0 {
            visit(tab);
            return;
        }
        if col == lambda[row] {
            fill(lambda, n, row + 1, 0, tab, visit);
            return;
        }
        let left = if col > 0 { tab[row][col - 1] } else { 1 };
        let above = if row > 0 { tab[row - 1][col] + 1 } else { 1 };
        for v in left.max(above)..=n {
            tab[row][col] = v;
            fill(lambda, n, row, col + 1, tab, visit);
        }
    }
    let mut tab: Vec<Vec<usize>> = lambda.iter().map(|&p| vec![0; p]).collect();
    fill(lambda, n, 0, 0, &mut tab, &mut visit);
}

/// Factorial Schur function by direct tableau enumeration:
/// `Σ_T ∏_{(i,j) ∈ λ} (z_{T(i,j)} + a_{T(i,j) + j - i})`, with `a_k` read as
/// `a[k - 1]` and missing indices as 0.
pub fn factorial_schur_oracle(z: &[Scalar], a: &[Scalar], lambda: &YoungDiagram) -> Result<Scalar> {
    let n = z.len();
    if lambda.len() > n && lambda.parts[n..].iter().any(|&p| p > 0) {
        return Err(Error::InvalidPartition(format!("{:?} has more than {n} nonzero rows", lambda.parts)));
    }
    if lambda.size() > TABLEAU_MAX_BOXES || n > TABLEAU_MAX_N {
        return Err(Error::SizeGuard(format!(
            "tableau enumeration limited to {TABLEAU_MAX_BOXES} boxes and N <= {TABLEAU_MAX_N}"
        )));
    }
    let shift = |k: isize| -> Scalar {
        if k >= 1 && (k as usize) <= a.len() {
            a[k as usize - 1].clone()
        } else {
            Scalar::zero()
        }
    };
    let mut total = Scalar::zero();
    for_each_ssyt(lambda.parts(), n, |tab| {
        let mut term = Scalar::one();
        for (i, row) in tab.iter().enumerate() {
            for (j, &entry) in row.iter().enumerate() {
                // 1-based (i, j): content j - i is the same 0-based
                let index = entry as isize + j as isize - i as isize;
                term *= &z[entry - 1] + shift(index);
            }
        }
        total += term;
    });
    Ok(total)
}

/// Schur polynomial as a tableau monomial sum.
pub fn schur_oracle(z: &[Scalar], lambda: &YoungDiagram) -> Result<Scalar> {
    factorial_schur_oracle(z, &[], lambda)
}
