//! Anti-isometric glue maps between discriminant groups and the resulting
//! unimodular overlattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{int, mod_inverse, rat_int, Rat};
use crate::error::{Error, Obstruction, Result};
use crate::lattice::{check_isometry, GlueAction, GlueGroup, Isometry, Lattice, PrimeAction, SylowComponent, TorsionValue};
use crate::linalg::{self, hermite_normal_form, IntMatrix, RatMatrix};
use crate::poly::modp;

/// Largest p-part searched exhaustively.
pub const SEARCH_LIMIT: u64 = 10_000;
// leaves visited before the exhaustive search gives up
const LEAF_LIMIT: usize = 1_000_000;
// eigenvalues over F_p are found by scanning residues up to this prime
const EIGEN_SCAN_LIMIT: u64 = 10_000_000;

/// How the map on one p-part was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GlueMethod {
    Scalar {
        #[serde(serialize_with = "crate::report::ser_display")]
        c: BigInt,
    },
    Eigenline {
        #[serde(serialize_with = "crate::report::ser_display")]
        lambda: BigInt,
        #[serde(serialize_with = "crate::report::ser_display")]
        scale: BigInt,
    },
    Search,
}

/// γ_p: column j holds the coordinates of γ(g_j) in the target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeGlue {
    pub prime: BigInt,
    pub matrix: IntMatrix,
    pub method: GlueMethod,
}

/// A glue map assembled from its p-parts, in increasing prime order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GlueMap {
    pub primes: Vec<PrimeGlue>,
}

impl GlueMap {
    pub fn prime(&self, p: &BigInt) -> Option<&PrimeGlue> {
        self.primes.iter().find(|g| &g.prime == p)
    }
}

fn no_map(p: &BigInt, obstruction: Obstruction) -> Error {
    Error::NoGlueMap { prime: p.to_string(), obstruction }
}

fn image_coords(m: &IntMatrix, j: usize, orders: &[BigInt]) -> Vec<BigInt> {
    (0..m.rows()).map(|i| m[(i, j)].mod_floor(&orders[i])).collect()
}

/// ord(g_i)·γ(g_i) = 0 for every generator, so γ is a homomorphism.
fn homomorphism(s1: &SylowComponent, s2: &SylowComponent, m: &IntMatrix) -> bool {
    (0..s1.dimension()).all(|i| {
        image_coords(m, i, &s2.orders)
            .iter()
            .zip(&s2.orders)
            .all(|(c, o)| (c * &s1.orders[i]).mod_floor(o).is_zero())
    })
}

/// b̄₁(g_i, g_j) + b̄₂(γg_i, γg_j) = 0 and q̄₁(g_i) + q̄₂(γg_i) = 0 for all
/// generator pairs of one p-part.
fn anti_isometric(
    g1: &GlueGroup,
    s1: &SylowComponent,
    g2: &GlueGroup,
    s2: &SylowComponent,
    m: &IntMatrix,
) -> Result<bool> {
    let k = s1.dimension();
    let images: Vec<Vec<Rat>> = (0..k).map(|j| s2.lift_of(&image_coords(m, j, &s2.orders))).collect();
    for i in 0..k {
        if g1.is_even() && g2.is_even() {
            let q = g1.quadratic_lift(&s1.generators[i])?.add(&g2.quadratic_lift(&images[i])?);
            if !q.is_zero() {
                return Ok(false);
            }
        }
        for j in 0..=i {
            let b = g1.bilinear_lifts(&s1.generators[i], &s1.generators[j]).add(&g2.bilinear_lifts(&images[i], &images[j]));
            if !b.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// γ ∘ t̄₁ = t̄₂ ∘ γ on one p-part.
fn equivariant(t1: &PrimeAction, t2: &PrimeAction, m: &IntMatrix, orders2: &[BigInt]) -> bool {
    let (Ok(lhs), Ok(rhs)) = (m.mul(&t1.matrix), t2.matrix.mul(m)) else {
        return false;
    };
    (0..lhs.rows()).all(|i| (0..lhs.cols()).all(|j| (&lhs[(i, j)] - &rhs[(i, j)]).mod_floor(&orders2[i]).is_zero()))
}

fn sorted_orders(s: &SylowComponent) -> Vec<BigInt> {
    let mut o = s.orders.clone();
    o.sort();
    o
}

/// Which glue-map conditions hold on one p-part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDiagnosis {
    pub prime: BigInt,
    pub homomorphism: bool,
    pub anti_isometric: bool,
    pub equivariant: bool,
}

impl PrimeDiagnosis {
    pub fn ok(&self) -> bool {
        self.homomorphism && self.anti_isometric && self.equivariant
    }
}

/// Evaluate every condition separately on every p-part.
pub fn diagnose_glue_map(a1: &GlueAction, a2: &GlueAction, gamma: &GlueMap) -> Result<Vec<PrimeDiagnosis>> {
    if a1.group.order() != a2.group.order() {
        return Err(Error::InvalidGlueMap("glue groups have different orders".into()));
    }
    let primes: Vec<&BigInt> = a1.components.iter().map(|c| &c.prime).collect();
    if primes != gamma.primes.iter().map(|g| &g.prime).collect::<Vec<_>>() {
        return Err(Error::InvalidGlueMap("glue map does not cover the prime support".into()));
    }
    let mut out = Vec::new();
    for pg in &gamma.primes {
        let (s1, t1) = a1.prime(&pg.prime).expect("prime present");
        let (s2, t2) = a2
            .prime(&pg.prime)
            .ok_or_else(|| Error::InvalidGlueMap(format!("target has no {}-part", pg.prime)))?;
        if pg.matrix.rows() != s2.dimension() || pg.matrix.cols() != s1.dimension() {
            return Err(Error::InvalidGlueMap(format!("γ_{} has the wrong shape", pg.prime)));
        }
        out.push(PrimeDiagnosis {
            prime: pg.prime.clone(),
            homomorphism: homomorphism(s1, s2, &pg.matrix),
            anti_isometric: anti_isometric(&a1.group, s1, &a2.group, s2, &pg.matrix)?,
            equivariant: equivariant(t1, t2, &pg.matrix, &s2.orders),
        });
    }
    Ok(out)
}

/// Checks every invariant of a glue map against the two actions. Since the
/// discriminant forms are nondegenerate, an anti-isometric homomorphism
/// between groups of equal order is bijective.
pub fn validate_glue_map(a1: &GlueAction, a2: &GlueAction, gamma: &GlueMap) -> Result<()> {
    for d in diagnose_glue_map(a1, a2, gamma)? {
        let what = if !d.homomorphism {
            "is not a homomorphism"
        } else if !d.anti_isometric {
            "is not an anti-isometry"
        } else if !d.equivariant {
            "is not equivariant"
        } else {
            continue;
        };
        return Err(Error::InvalidGlueMap(format!("γ_{} {what}", d.prime)));
    }
    Ok(())
}

/// Find γ: G(L₁) → G(L₂) with q̄₂∘γ = −q̄₁ and γ∘t̄₁ = t̄₂∘γ, prime by prime.
pub fn find_glue_map(a1: &GlueAction, a2: &GlueAction) -> Result<GlueMap> {
    let primes1: Vec<BigInt> = a1.components.iter().map(|c| c.prime.clone()).collect();
    let primes2: Vec<BigInt> = a2.components.iter().map(|c| c.prime.clone()).collect();
    if primes1 != primes2 {
        let p = primes1.iter().chain(&primes2).find(|p| !primes1.contains(p) || !primes2.contains(p)).unwrap();
        return Err(no_map(p, Obstruction::GroupMismatch));
    }
    let mut out = GlueMap::default();
    for p in &primes1 {
        let (s1, t1) = a1.prime(p).unwrap();
        let (s2, t2) = a2.prime(p).unwrap();
        if sorted_orders(s1) != sorted_orders(s2) {
            return Err(no_map(p, Obstruction::GroupMismatch));
        }
        let ctx = PrimeContext { a1, a2, s1, s2, t1, t2, p };
        out.primes.push(ctx.solve()?);
    }
    validate_glue_map(a1, a2, &out)?;
    Ok(out)
}

struct PrimeContext<'a> {
    a1: &'a GlueAction,
    a2: &'a GlueAction,
    s1: &'a SylowComponent,
    s2: &'a SylowComponent,
    t1: &'a PrimeAction,
    t2: &'a PrimeAction,
    p: &'a BigInt,
}

impl PrimeContext<'_> {
    fn forms_ok(&self, m: &IntMatrix) -> Result<bool> {
        Ok(homomorphism(self.s1, self.s2, m) && anti_isometric(&self.a1.group, self.s1, &self.a2.group, self.s2, m)?)
    }

    fn equivariant(&self, m: &IntMatrix) -> bool {
        equivariant(self.t1, self.t2, m, &self.s2.orders)
    }

    fn solve(&self) -> Result<PrimeGlue> {
        if self.s1.dimension() == 1 && self.s2.dimension() == 1 {
            return self.scalar_scan();
        }
        if self.s1.dimension() == 2 && self.s1.killed_by_p && self.s2.killed_by_p {
            if let Some(g) = self.eigenline()? {
                return Ok(g);
            }
        }
        self.exhaustive()
    }

    fn scalar_scan(&self) -> Result<PrimeGlue> {
        let n = &self.s1.orders[0];
        let mut form_hit = false;
        let mut c = BigInt::one();
        while &c < n {
            if !c.is_multiple_of(self.p) {
                let m = IntMatrix::from_diagonal(&[c.clone()]);
                if self.forms_ok(&m)? {
                    form_hit = true;
                    if self.equivariant(&m) {
                        return Ok(PrimeGlue { prime: self.p.clone(), matrix: m, method: GlueMethod::Scalar { c } });
                    }
                }
            }
            c += 1;
        }
        let obstruction = if form_hit { Obstruction::Equivariance } else { Obstruction::FormMismatch };
        Err(no_map(self.p, obstruction))
    }

    /// t̄ with distinct eigenvalues λ ≠ λ⁻¹ on F_p²: both eigenlines are
    /// isotropic, so γ sends e₁ ↦ e₂ and f₁ ↦ s·f₂ where s fixes the pairing.
    fn eigenline(&self) -> Result<Option<PrimeGlue>> {
        let p = self.p;
        if p > &int(EIGEN_SCAN_LIMIT as i64) {
            return Ok(None);
        }
        let (Some(c1), Some(c2)) = (&self.t1.charpoly_mod_p, &self.t2.charpoly_mod_p) else {
            return Ok(None);
        };
        let r1 = modp::roots_bruteforce(c1.coeffs(), p);
        let r2 = modp::roots_bruteforce(c2.coeffs(), p);
        if r1.len() != 2 || r1 != r2 {
            return Ok(None);
        }
        let (e1, f1) = (eigenvector(&self.t1.matrix, &r1[0], p), eigenvector(&self.t1.matrix, &r1[1], p));
        let (e2, f2) = (eigenvector(&self.t2.matrix, &r1[0], p), eigenvector(&self.t2.matrix, &r1[1], p));
        let pair = |g: &GlueGroup, s: &SylowComponent, x: &[BigInt], y: &[BigInt]| -> BigInt {
            let v = g.bilinear_lifts(&s.lift_of(x), &s.lift_of(y));
            (v.value() * rat_int(p)).to_integer().mod_floor(p)
        };
        let b1 = pair(&self.a1.group, self.s1, &e1, &f1);
        let b2 = pair(&self.a2.group, self.s2, &e2, &f2);
        let Some(b2_inv) = mod_inverse(&b2, p) else { return Ok(None) };
        let scale = (-&b1 * b2_inv).mod_floor(p);
        // γ·[e₁ f₁] = [e₂ s·f₂]
        let src = IntMatrix::from_rows_vec(vec![vec![e1[0].clone(), f1[0].clone()], vec![e1[1].clone(), f1[1].clone()]])?;
        let dst = IntMatrix::from_rows_vec(vec![
            vec![e2[0].clone(), (&scale * &f2[0]).mod_floor(p)],
            vec![e2[1].clone(), (&scale * &f2[1]).mod_floor(p)],
        ])?;
        let Some(src_inv) = inverse_2x2_mod(&src, p) else { return Ok(None) };
        let m = reduce(&dst.mul(&src_inv)?, p);
        if self.forms_ok(&m)? && self.equivariant(&m) {
            let method = GlueMethod::Eigenline { lambda: r1[0].clone(), scale };
            return Ok(Some(PrimeGlue { prime: p.clone(), matrix: m, method }));
        }
        Ok(None)
    }

    fn exhaustive(&self) -> Result<PrimeGlue> {
        let order = self.s2.order();
        if order > int(SEARCH_LIMIT as i64) {
            return Err(no_map(self.p, Obstruction::SearchTooLarge));
        }
        let g1 = &self.a1.group;
        let g2 = &self.a2.group;
        let both_even = g1.is_even() && g2.is_even();
        let elements: Vec<(Vec<BigInt>, Vec<Rat>)> = enumerate_group(&self.s2.orders)
            .into_iter()
            .map(|c| {
                let lift = self.s2.lift_of(&c);
                (c, lift)
            })
            .collect();
        let k = self.s1.dimension();
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        let mut leaves = 0usize;
        let mut form_hit = false;
        let found = self.backtrack(&elements, both_even, &mut chosen, &mut leaves, &mut form_hit)?;
        match found {
            Some(m) => Ok(PrimeGlue { prime: self.p.clone(), matrix: m, method: GlueMethod::Search }),
            None if leaves >= LEAF_LIMIT => Err(no_map(self.p, Obstruction::SearchTooLarge)),
            None if form_hit => Err(no_map(self.p, Obstruction::Equivariance)),
            None => Err(no_map(self.p, Obstruction::FormMismatch)),
        }
    }

    fn backtrack(
        &self,
        elements: &[(Vec<BigInt>, Vec<Rat>)],
        both_even: bool,
        chosen: &mut Vec<usize>,
        leaves: &mut usize,
        form_hit: &mut bool,
    ) -> Result<Option<IntMatrix>> {
        let (g1, g2) = (&self.a1.group, &self.a2.group);
        let i = chosen.len();
        if i == self.s1.dimension() {
            *leaves += 1;
            *form_hit = true;
            let cols: Vec<Vec<Rat>> = chosen.iter().map(|&e| elements[e].0.iter().map(rat_int).collect()).collect();
            let m = RatMatrix::from_cols(&cols)?.to_int().expect("integer coordinates");
            return Ok(self.equivariant(&m).then_some(m));
        }
        let gi = &self.s1.generators[i];
        let qi = if both_even { Some(g1.quadratic_lift(gi)?) } else { None };
        for (e, (coords, lift)) in elements.iter().enumerate() {
            if *leaves >= LEAF_LIMIT {
                return Ok(None);
            }
            let killed = coords.iter().zip(&self.s2.orders).all(|(c, o)| (c * &self.s1.orders[i]).mod_floor(o).is_zero());
            if !killed {
                continue;
            }
            if let Some(q) = &qi {
                if !q.add(&g2.quadratic_lift(lift)?).is_zero() {
                    continue;
                }
            } else if !g1.bilinear_lifts(gi, gi).add(&g2.bilinear_lifts(lift, lift)).is_zero() {
                continue;
            }
            let pairs_ok = chosen.iter().enumerate().all(|(j, &ej)| {
                g1.bilinear_lifts(gi, &self.s1.generators[j]).add(&g2.bilinear_lifts(lift, &elements[ej].1)).is_zero()
            });
            if !pairs_ok {
                continue;
            }
            chosen.push(e);
            if let Some(m) = self.backtrack(elements, both_even, chosen, leaves, form_hit)? {
                return Ok(Some(m));
            }
            chosen.pop();
        }
        Ok(None)
    }
}

fn enumerate_group(orders: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![]];
    for o in orders {
        let n = o.to_u64().expect("bounded by the search limit");
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |c| {
                    let mut v = prefix.clone();
                    v.push(BigInt::from(c));
                    v
                })
            })
            .collect();
    }
    out
}

fn reduce(m: &IntMatrix, p: &BigInt) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(i, j)] = m[(i, j)].mod_floor(p);
        }
    }
    out
}

fn inverse_2x2_mod(m: &IntMatrix, p: &BigInt) -> Option<IntMatrix> {
    let det = (&m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)]).mod_floor(p);
    let di = mod_inverse(&det, p)?;
    let adj = IntMatrix::from_rows_vec(vec![
        vec![m[(1, 1)].clone(), -&m[(0, 1)]],
        vec![-&m[(1, 0)], m[(0, 0)].clone()],
    ])
    .ok()?;
    Some(reduce(&adj.scale(&di), p))
}

/// A nonzero kernel vector of t − λ on F_p², normalized so its first
/// nonzero entry is 1.
fn eigenvector(t: &IntMatrix, lambda: &BigInt, p: &BigInt) -> Vec<BigInt> {
    let a = (&t[(0, 0)] - lambda).mod_floor(p);
    let b = t[(0, 1)].mod_floor(p);
    let c = t[(1, 0)].mod_floor(p);
    let d = (&t[(1, 1)] - lambda).mod_floor(p);
    let v = if !a.is_zero() || !b.is_zero() { vec![b, -a] } else { vec![d, -c] };
    let v: Vec<BigInt> = v.iter().map(|x| x.mod_floor(p)).collect();
    let lead = v.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(BigInt::one);
    let inv = mod_inverse(&lead, p).expect("p prime");
    v.iter().map(|x| (x * &inv).mod_floor(p)).collect()
}

/// The overlattice {(x, y) ∈ L₁∨ ⊕ L₂∨ : γ(x̄) = ȳ} with its embeddings.
#[derive(Clone, Debug)]
pub struct GluingResult {
    pub ambient: Lattice,
    /// Columns are the ambient basis vectors in L₁ ⊕ L₂ coordinates.
    pub basis: RatMatrix,
    /// Columns are the images of the L₁ (resp. L₂) basis in ambient coordinates.
    pub embed1: IntMatrix,
    pub embed2: IntMatrix,
    /// [L : L₁ ⊕ L₂].
    pub index: BigInt,
}

/// Build the glued lattice; the ambient basis is the HNF of the generator
/// stack (L₁ basis, L₂ basis, graph lifts).
pub fn glue(l1: &Lattice, l2: &Lattice, gamma: &GlueMap) -> Result<GluingResult> {
    let (g1, g2) = (l1.glue_group(), l2.glue_group());
    if g1.order() != g2.order() {
        return Err(Error::InvalidGlueMap("glue groups have different orders".into()));
    }
    let (c1, c2) = (g1.sylow_decomposition(), g2.sylow_decomposition());
    let (n1, n2) = (l1.rank(), l2.rank());
    let n = n1 + n2;
    let mut rows: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| rat_int(&int((i == j) as i64))).collect()).collect();
    if c1.len() != gamma.primes.len() {
        return Err(Error::InvalidGlueMap("glue map does not cover the prime support".into()));
    }
    for (pg, s1) in gamma.primes.iter().zip(&c1) {
        let s2 = c2
            .iter()
            .find(|s| s.prime == pg.prime && s1.prime == pg.prime)
            .ok_or_else(|| Error::InvalidGlueMap(format!("no {}-part to glue", pg.prime)))?;
        if pg.matrix.rows() != s2.dimension() || pg.matrix.cols() != s1.dimension() {
            return Err(Error::InvalidGlueMap(format!("γ_{} has the wrong shape", pg.prime)));
        }
        if !homomorphism(s1, s2, &pg.matrix) {
            return Err(Error::InvalidGlueMap(format!("γ_{} is not a homomorphism", pg.prime)));
        }
        if !anti_isometric(&g1, s1, &g2, s2, &pg.matrix)? {
            return Err(Error::InvalidGlueMap(format!("γ_{} is not an anti-isometry", pg.prime)));
        }
        for j in 0..s1.dimension() {
            let y = s2.lift_of(&image_coords(&pg.matrix, j, &s2.orders));
            rows.push(s1.generators[j].iter().chain(&y).cloned().collect());
        }
    }
    let stack = RatMatrix::from_rows_vec(rows)?;
    let den = stack.common_denominator();
    let hnf = hermite_normal_form(&stack.scale(&rat_int(&den)).to_int().expect("cleared"));
    if hnf.rank != n {
        return Err(Error::GluingInconsistent("generator stack is not of full rank".into()));
    }
    let basis_rows: Vec<Vec<Rat>> = (0..n).map(|i| hnf.h.row(i).iter().map(|c| Rat::new(c.clone(), den.clone())).collect()).collect();
    let basis = RatMatrix::from_rows_vec(basis_rows)?.transpose();

    let big = l1.gram().direct_sum(l2.gram()).to_rat();
    let gram = basis.transpose().mul(&big)?.mul(&basis)?;
    let gram = gram.to_int().ok_or_else(|| Error::GluingInconsistent("ambient form is not integral".into()))?;
    let ambient = Lattice::new(gram)?;
    let index = g1.order();
    if ambient.det().abs() * &index * &index != (l1.det() * l2.det()).abs() {
        return Err(Error::GluingInconsistent("index does not match the determinants".into()));
    }

    // coordinates of the L₁ ⊕ L₂ basis in the ambient basis
    let inv = linalg::inverse_rat(&basis)?;
    let coords = inv.to_int().ok_or_else(|| Error::GluingInconsistent("L₁ ⊕ L₂ is not contained in the ambient".into()))?;
    let embed1 = coords.col_range(0, n1);
    let embed2 = coords.col_range(n1, n);
    Ok(GluingResult { ambient, basis, embed1, embed2, index })
}

/// Extend t₁ ⊕ t₂ to the glued lattice. Fails with `NonIntegralExtension`
/// when the glue map is not equivariant.
pub fn extend_isometry(result: &GluingResult, t1: &Isometry, t2: &Isometry) -> Result<Isometry> {
    let t = t1.matrix().direct_sum(t2.matrix()).to_rat();
    let inv = linalg::inverse_rat(&result.basis)?;
    let m = inv.mul(&t)?.mul(&result.basis)?;
    let m = m.to_int().ok_or(Error::NonIntegralExtension)?;
    check_isometry(&result.ambient, &m)
}

/// Convenience: find γ, glue, and extend in one step.
pub fn glue_with_isometries(t1: &Isometry, t2: &Isometry) -> Result<(GlueMap, GluingResult, Isometry)> {
    let gamma = find_glue_map(&t1.induced_glue_action(), &t2.induced_glue_action())?;
    let result = glue(t1.lattice(), t2.lattice(), &gamma)?;
    let t = extend_isometry(&result, t1, t2)?;
    Ok((gamma, result, t))
}

/// q̄ values of a p-part's generators, for reporting.
pub fn generator_q_values(group: &GlueGroup, comp: &SylowComponent) -> Result<Vec<TorsionValue>> {
    comp.generators.iter().map(|g| group.quadratic_lift(g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{is_primitive, orthogonal_complement};

    fn lat(rows: &[&[i64]]) -> Lattice {
        Lattice::new(IntMatrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn a1_glued_with_a1_twisted() {
        // <2> and <-2> have q = 1/2 and -1/2; the glue is an even unimodular plane
        let (l1, l2) = (lat(&[&[2]]), lat(&[&[-2]]));
        let (t1, t2) = (Isometry::identity(&l1), Isometry::identity(&l2));
        let (gamma, res, t) = glue_with_isometries(&t1, &t2).unwrap();
        assert_eq!(gamma.primes[0].method, GlueMethod::Scalar { c: int(1) });
        assert!(res.ambient.is_even() && res.ambient.is_unimodular());
        assert_eq!(res.ambient.signature().unwrap(), (1, 1));
        assert_eq!(res.index, int(2));
        assert_eq!(t.matrix(), &IntMatrix::identity(2));
    }

    #[test]
    fn unimodular_pieces_give_direct_sum() {
        let u = lat(&[&[0, 1], &[1, 0]]);
        let (t1, t2) = (Isometry::identity(&u), Isometry::identity(&u));
        let (gamma, res, t) = glue_with_isometries(&t1, &t2).unwrap();
        assert!(gamma.primes.is_empty());
        assert_eq!(res.ambient.gram(), &u.gram().direct_sum(u.gram()));
        assert_eq!(t.matrix(), &IntMatrix::identity(4));
    }

    #[test]
    fn form_mismatch_is_reported() {
        let l = lat(&[&[2]]);
        let t = Isometry::identity(&l);
        let err = find_glue_map(&t.induced_glue_action(), &t.induced_glue_action()).unwrap_err();
        assert_eq!(err, Error::NoGlueMap { prime: "2".into(), obstruction: Obstruction::FormMismatch });
    }

    #[test]
    fn group_mismatch_is_reported() {
        let (a, b) = (lat(&[&[2]]), lat(&[&[-6]]));
        let err = find_glue_map(&Isometry::identity(&a).induced_glue_action(), &Isometry::identity(&b).induced_glue_action())
            .unwrap_err();
        assert!(matches!(err, Error::NoGlueMap { obstruction: Obstruction::GroupMismatch, .. }));
    }

    #[test]
    fn equivariance_obstruction() {
        // A2 with q-values 2/3 and its negative; t̄ = id on one side and −id on the other
        let a2 = lat(&[&[2, -1], &[-1, 2]]);
        let neg = lat(&[&[-2, 1], &[1, -2]]);
        let t1 = check_isometry(&a2, &IntMatrix::from_i64(&[&[-1, 0], &[0, -1]])).unwrap();
        let t2 = Isometry::identity(&neg);
        let err = find_glue_map(&t1.induced_glue_action(), &t2.induced_glue_action()).unwrap_err();
        assert_eq!(err, Error::NoGlueMap { prime: "3".into(), obstruction: Obstruction::Equivariance });
    }

    #[test]
    fn exhaustive_search_on_non_cyclic_part() {
        // <2>⊕<2> against <-2>⊕<-2>: F_2² with identity actions
        let (l1, l2) = (lat(&[&[2, 0], &[0, 2]]), lat(&[&[-2, 0], &[0, -2]]));
        let (gamma, res, _) = glue_with_isometries(&Isometry::identity(&l1), &Isometry::identity(&l2)).unwrap();
        assert_eq!(gamma.primes[0].method, GlueMethod::Search);
        assert!(res.ambient.is_unimodular() && res.ambient.is_even());
        assert_eq!(res.index, int(4));
        let comp = orthogonal_complement(&res.ambient, &res.embed1).unwrap();
        assert!(is_primitive(&res.embed1).primitive);
        assert_eq!(comp.lattice().unwrap().gram(), l2.gram());
    }

    #[test]
    fn non_equivariant_map_breaks_extension() {
        // swapping the generators of F_3² under a non-scalar action
        let l1 = lat(&[&[6, 0], &[0, 6]]);
        let l2 = lat(&[&[-6, 0], &[0, -6]]);
        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let t1 = check_isometry(&l1, &IntMatrix::from_i64(&[&[-1, 0], &[0, 1]])).unwrap();
        let t2 = check_isometry(&l2, &IntMatrix::from_i64(&[&[-1, 0], &[0, 1]])).unwrap();
        let good = find_glue_map(&t1.induced_glue_action(), &t2.induced_glue_action()).unwrap();
        let res = glue(&l1, &l2, &good).unwrap();
        extend_isometry(&res, &t1, &t2).unwrap();
        let mut bad = good.clone();
        for pg in bad.primes.iter_mut() {
            pg.matrix = pg.matrix.mul(&swap).unwrap();
        }
        let res = glue(&l1, &l2, &bad).unwrap();
        assert_eq!(extend_isometry(&res, &t1, &t2).unwrap_err(), Error::NonIntegralExtension);
    }
}
