//! Vertex weights of the generalized free-fermion model.
//!
//! Matrix elements are written `<a_out, q_out| X |a_in, q_in>` in the tensor
//! basis order (00, 01, 10, 11), the first factor being the auxiliary space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Scalar;

/// Occupation of a lattice edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeState {
    Hole = 0,
    Particle = 1,
}

impl EdgeState {
    pub const BOTH: [EdgeState; 2] = [EdgeState::Hole, EdgeState::Particle];

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(EdgeState::Hole),
            1 => Some(EdgeState::Particle),
            _ => None,
        }
    }
}

/// Per-site parameters `(w_j, α_j, γ_j)` of a quantum space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Site {
    pub w: Scalar,
    pub alpha: Scalar,
    pub gamma: Scalar,
}

impl Site {
    pub fn new(w: Scalar, alpha: Scalar, gamma: Scalar) -> Self {
        Site { w, alpha, gamma }
    }

    /// `(1 - α γ) z + α w`, the weight of an auxiliary particle passing over
    /// an empty site.
    pub fn pass_weight(&self, z: &Scalar) -> Scalar {
        (Scalar::one() - &self.alpha * &self.gamma) * z + &self.alpha * &self.w
    }

    /// `w - γ z`, the weight of an empty vertex.
    pub fn empty_weight(&self, z: &Scalar) -> Scalar {
        &self.w - &self.gamma * z
    }
}

/// Global deformation `t`, spectral parameters `z_1..z_N` (one per row) and
/// the `M` site triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelParams {
    pub t: Scalar,
    pub z: Vec<Scalar>,
    pub sites: Vec<Site>,
}

impl ModelParams {
    pub fn new(t: Scalar, z: Vec<Scalar>, sites: Vec<Site>) -> Result<Self> {
        let params = ModelParams { t, z, sites };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.z.len() > self.sites.len() {
            return Err(Error::Input(format!(
                "N = {} spectral parameters exceed M = {} sites",
                self.z.len(),
                self.sites.len()
            )));
        }
        Ok(())
    }

    /// Number of sites `M`.
    pub fn m(&self) -> usize {
        self.sites.len()
    }

    /// Number of spectral parameters `N`.
    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn site(&self, j: usize) -> &Site {
        &self.sites[j - 1]
    }

    /// Errors with the first coincident pair (1-based) if the spectral
    /// parameters are not pairwise distinct.
    pub fn require_distinct_z(&self) -> Result<()> {
        for k in 0..self.z.len() {
            for j in 0..k {
                if self.z[j] == self.z[k] {
                    return Err(Error::CoincidentSpectral(j + 1, k + 1));
                }
            }
        }
        Ok(())
    }

    pub fn with_z(&self, z: Vec<Scalar>) -> ModelParams {
        ModelParams { t: self.t.clone(), z, sites: self.sites.clone() }
    }

    /// Copy with `w_M` replaced.
    pub fn with_last_w(&self, w: Scalar) -> ModelParams {
        let mut out = self.clone();
        if let Some(last) = out.sites.last_mut() {
            last.w = w;
        }
        out
    }

    /// Drops site `M`, and also `z_N` when `drop_row` is set.
    pub fn truncated(&self, drop_row: bool) -> ModelParams {
        let mut out = self.clone();
        out.sites.pop();
        if drop_row {
            out.z.pop();
        }
        out
    }

    /// Parameters with `z` permuted: entry `i` becomes `z_{σ(i)}`.
    pub fn permuted_z(&self, sigma: &[usize]) -> ModelParams {
        self.with_z(sigma.iter().map(|&s| self.z[s].clone()).collect())
    }
}

fn conserves(a_in: EdgeState, b_in: EdgeState, a_out: EdgeState, b_out: EdgeState) -> bool {
    a_in.bit() + b_in.bit() == a_out.bit() + b_out.bit()
}

/// Matrix element `<a_out, q_out| L(z, w, α, γ) |a_in, q_in>`.
#[allow(clippy::too_many_arguments)]
pub fn l_weight(
    a_in: EdgeState,
    q_in: EdgeState,
    a_out: EdgeState,
    q_out: EdgeState,
    z: &Scalar,
    w: &Scalar,
    alpha: &Scalar,
    gamma: &Scalar,
    t: &Scalar,
) -> Scalar {
    use EdgeState::*;
    if !conserves(a_in, q_in, a_out, q_out) {
        return Scalar::zero();
    }
    let unit = Scalar::one();
    match (a_in, q_in, a_out, q_out) {
        (Hole, Hole, Hole, Hole) => w - gamma * z,
        (Hole, Particle, Hole, Particle) => t * w + gamma * z,
        (Particle, Hole, Particle, Hole) => alpha * w + (&unit - alpha * gamma) * z,
        (Particle, Particle, Particle, Particle) => -(t * alpha * w) + (&unit - alpha * gamma) * z,
        // auxiliary particle deposited on the site
        (Particle, Hole, Hole, Particle) => w.clone(),
        // site particle picked up by the auxiliary line
        (Hole, Particle, Particle, Hole) => (t + &unit) * z,
        _ => unreachable!("conserving tuple"),
    }
}

/// `l_weight` with the site triple and `t` taken from the parameters.
pub fn site_weight(
    a_in: EdgeState,
    q_in: EdgeState,
    a_out: EdgeState,
    q_out: EdgeState,
    z: &Scalar,
    site: &Site,
    t: &Scalar,
) -> Scalar {
    l_weight(a_in, q_in, a_out, q_out, z, &site.w, &site.alpha, &site.gamma, t)
}

/// All sixteen L-matrix elements at one `(z, site)`, computed once so inner
/// loops only index.
#[derive(Clone, Debug)]
pub struct WeightTable([Scalar; 16]);

impl WeightTable {
    pub fn new(z: &Scalar, site: &Site, t: &Scalar) -> Self {
        WeightTable(std::array::from_fn(|i| site_weight(bit(i, 3), bit(i, 2), bit(i, 1), bit(i, 0), z, site, t)))
    }

    pub fn get(&self, a_in: EdgeState, q_in: EdgeState, a_out: EdgeState, q_out: EdgeState) -> &Scalar {
        let i = (a_in.bit() as usize) << 3
            | (q_in.bit() as usize) << 2
            | (a_out.bit() as usize) << 1
            | q_out.bit() as usize;
        &self.0[i]
    }
}

/// Matrix element `<a_out, b_out| R(z) |a_in, b_in>`.
pub fn r_weight(
    a_in: EdgeState,
    b_in: EdgeState,
    a_out: EdgeState,
    b_out: EdgeState,
    z: &Scalar,
    t: &Scalar,
) -> Scalar {
    use EdgeState::*;
    if !conserves(a_in, b_in, a_out, b_out) {
        return Scalar::zero();
    }
    let unit = Scalar::one();
    match (a_in, b_in, a_out, b_out) {
        (Hole, Hole, Hole, Hole) => &unit + t * z,
        (Hole, Particle, Hole, Particle) => t * (&unit - z),
        (Particle, Hole, Particle, Hole) => z - &unit,
        (Particle, Particle, Particle, Particle) => z + t,
        (Particle, Hole, Hole, Particle) => t + &unit,
        (Hole, Particle, Particle, Hole) => (t + &unit) * z,
        _ => unreachable!("conserving tuple"),
    }
}

type Op8 = [[Scalar; 8]; 8];

fn bit(i: usize, shift: usize) -> EdgeState {
    EdgeState::from_bit(((i >> shift) & 1) as u8).expect("single bit")
}

fn op8(entry: impl Fn(usize, usize) -> Scalar) -> Op8 {
    std::array::from_fn(|row| std::array::from_fn(|col| entry(row, col)))
}

fn mul8(lhs: &Op8, rhs: &Op8) -> Op8 {
    op8(|row, col| (0..8).map(|k| &lhs[row][k] * &rhs[k][col]).sum())
}

/// Checks `R_ab(z1/z2) L_aj(z1) L_bj(z2) = L_bj(z2) L_aj(z1) R_ab(z1/z2)` as
/// an exact 8×8 identity on `W_a ⊗ W_b ⊗ F_j`.
pub fn check_rll(z1: &Scalar, z2: &Scalar, site: &Site, t: &Scalar) -> Result<bool> {
    let ratio = z1.checked_div(z2).ok_or_else(|| Error::Input("RLL check needs z2 != 0".into()))?;
    let (lhs, rhs) = rll_sides(&ratio, z1, z2, site, t);
    Ok(lhs == rhs)
}

fn rll_sides(ratio: &Scalar, z1: &Scalar, z2: &Scalar, site: &Site, t: &Scalar) -> (Op8, Op8) {
    // bit 2 = a, bit 1 = b, bit 0 = q
    let r_ab = op8(|o, i| {
        if (o & 1) != (i & 1) {
            return Scalar::zero();
        }
        r_weight(bit(i, 2), bit(i, 1), bit(o, 2), bit(o, 1), ratio, t)
    });
    let l_aj = |z: &Scalar| {
        op8(|o, i| {
            if bit(o, 1) != bit(i, 1) {
                return Scalar::zero();
            }
            site_weight(bit(i, 2), bit(i, 0), bit(o, 2), bit(o, 0), z, site, t)
        })
    };
    let l_bj = |z: &Scalar| {
        op8(|o, i| {
            if bit(o, 2) != bit(i, 2) {
                return Scalar::zero();
            }
            site_weight(bit(i, 1), bit(i, 0), bit(o, 1), bit(o, 0), z, site, t)
        })
    };
    let la = l_aj(z1);
    let lb = l_bj(z2);
    let lhs = mul8(&mul8(&r_ab, &la), &lb);
    let rhs = mul8(&mul8(&lb, &la), &r_ab);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use EdgeState::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn all_tuples() -> impl Iterator<Item = [EdgeState; 4]> {
        (0..16u8).map(|m| {
            [
                EdgeState::from_bit(m >> 3 & 1).unwrap(),
                EdgeState::from_bit(m >> 2 & 1).unwrap(),
                EdgeState::from_bit(m >> 1 & 1).unwrap(),
                EdgeState::from_bit(m & 1).unwrap(),
            ]
        })
    }

    #[test]
    fn l_weight_examples() {
        let lw = |a, b, c, d, z, w, al, g, t| l_weight(a, b, c, d, &s(z), &s(w), &s(al), &s(g), &s(t));
        assert_eq!(lw(Hole, Hole, Hole, Hole, 2, 3, 4, 1, 9), s(1));
        assert_eq!(lw(Particle, Hole, Hole, Particle, 2, 5, 4, 1, 9), s(5));
        assert_eq!(lw(Hole, Hole, Particle, Particle, 2, 5, 4, 1, 9), s(0));
        assert_eq!(lw(Hole, Particle, Particle, Hole, 2, 5, 4, 1, 9), s(20));
    }

    #[test]
    fn r_weight_examples() {
        assert_eq!(r_weight(Hole, Hole, Hole, Hole, &s(2), &s(3)), s(7));
        assert_eq!(r_weight(Particle, Particle, Particle, Particle, &s(2), &s(3)), s(5));
        assert_eq!(r_weight(Hole, Hole, Hole, Particle, &s(2), &s(3)), s(0));
        assert_eq!(r_weight(Particle, Hole, Hole, Particle, &s(2), &s(3)), s(4));
        assert_eq!(r_weight(Hole, Particle, Particle, Hole, &s(2), &s(3)), s(8));
    }

    #[test]
    fn ice_rule_on_all_tuples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (z, w, a, g, t) = (
            Scalar::sample_nonzero(&mut rng),
            Scalar::sample_nonzero(&mut rng),
            Scalar::sample_nonzero(&mut rng),
            Scalar::sample_nonzero(&mut rng),
            s(2),
        );
        for [p, q, r, u] in all_tuples() {
            let conserving = p.bit() + q.bit() == r.bit() + u.bit();
            let lv = l_weight(p, q, r, u, &z, &w, &a, &g, &t);
            let rv = r_weight(p, q, r, u, &z, &t);
            if !conserving {
                assert!(lv.is_zero() && rv.is_zero());
            }
        }
    }

    #[test]
    fn specializations_match_reduced_operators() {
        let z = Scalar::new(5, 3).unwrap();
        let t = Scalar::new(-2, 7).unwrap();
        let alpha = Scalar::new(4, 9).unwrap();
        let one = s(1);
        let zero = s(0);
        // w = 1, α = 0, γ = 0
        let reduced = |p, q, r, u| l_weight(p, q, r, u, &z, &one, &zero, &zero, &t);
        assert_eq!(reduced(Hole, Hole, Hole, Hole), one);
        assert_eq!(reduced(Hole, Particle, Hole, Particle), t);
        assert_eq!(reduced(Particle, Hole, Hole, Particle), one);
        assert_eq!(reduced(Hole, Particle, Particle, Hole), (&t + &one) * &z);
        assert_eq!(reduced(Particle, Hole, Particle, Hole), z);
        assert_eq!(reduced(Particle, Particle, Particle, Particle), z);
        // w = 1, γ = 0, α free
        let factorial = |p, q, r, u| l_weight(p, q, r, u, &z, &one, &alpha, &zero, &t);
        assert_eq!(factorial(Hole, Hole, Hole, Hole), one);
        assert_eq!(factorial(Hole, Particle, Hole, Particle), t);
        assert_eq!(factorial(Particle, Hole, Hole, Particle), one);
        assert_eq!(factorial(Hole, Particle, Particle, Hole), (&t + &one) * &z);
        assert_eq!(factorial(Particle, Hole, Particle, Hole), &alpha + &z);
        assert_eq!(factorial(Particle, Particle, Particle, Particle), -(&t * &alpha) + &z);
    }

    #[test]
    fn rll_examples() {
        let unit_site = Site::new(s(1), s(0), s(0));
        assert!(check_rll(&s(2), &s(3), &unit_site, &s(5)).unwrap());
        let site = Site::new(Scalar::new(-3, 4).unwrap(), s(7), Scalar::new(1, 9).unwrap());
        assert!(check_rll(&s(1), &s(1), &site, &s(-4)).unwrap());
        assert!(check_rll(&s(1), &s(0), &site, &s(1)).is_err());
    }

    #[test]
    fn rll_detects_a_wrong_weight() {
        // swapping the two off-diagonal entries of L breaks the relation
        let site = Site::new(s(2), s(3), s(5));
        let (z1, z2, t) = (s(2), s(3), s(7));
        let ratio = &z1 / &z2;
        let (lhs, rhs) = rll_sides(&ratio, &z1, &z2, &site, &t);
        assert_eq!(lhs, rhs);
        let transposed = |z: &Scalar, a: usize| {
            op8(|o, i| {
                let other = if a == 2 { 1 } else { 2 };
                if bit(o, other) != bit(i, other) {
                    return Scalar::zero();
                }
                site_weight(bit(o, a), bit(o, 0), bit(i, a), bit(i, 0), z, &site, &t)
            })
        };
        let r_ab = op8(|o, i| {
            if (o & 1) != (i & 1) {
                return Scalar::zero();
            }
            r_weight(bit(i, 2), bit(i, 1), bit(o, 2), bit(o, 1), &ratio, &t)
        });
        let la = transposed(&z1, 2);
        let lb = transposed(&z2, 1);
        assert_ne!(mul8(&mul8(&r_ab, &la), &lb), mul8(&mul8(&lb, &la), &r_ab));
    }
}
