use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Isometry, Lattice};
use crate::arith::{factorize, fmt_rat, rat_int, rat_mod, valuation, Rat};
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::poly::IntPoly;

/// A value of a torsion form: a rational modulo 1 (bilinear) or modulo 2
/// (quadratic), stored as its representative in `[0, modulus)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorsionValue {
    value: Rat,
    modulus: u8,
}

impl TorsionValue {
    pub fn mod1(q: &Rat) -> Self {
        TorsionValue { value: rat_mod(q, &BigInt::one()), modulus: 1 }
    }

    pub fn mod2(q: &Rat) -> Self {
        TorsionValue { value: rat_mod(q, &BigInt::from(2)), modulus: 2 }
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn neg(&self) -> Self {
        let m = BigInt::from(self.modulus);
        TorsionValue { value: rat_mod(&-self.value.clone(), &m), modulus: self.modulus }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "mixed torsion moduli");
        let m = BigInt::from(self.modulus);
        TorsionValue { value: rat_mod(&(&self.value + &other.value), &m), modulus: self.modulus }
    }
}

impl fmt::Display for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", fmt_rat(&self.value), self.modulus)
    }
}

impl fmt::Debug for TorsionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The discriminant group `L∨/L` presented as a product of cyclic groups.
///
/// Generator `k` has order `orders[k]` and is represented by the rational
/// vector `lifts[k]` (coordinates in the lattice basis, each in `[0, 1)`).
#[derive(Clone, Debug)]
pub struct GlueGroup {
    gram: IntMatrix,
    even: bool,
    orders: Vec<BigInt>,
    lifts: Vec<Vec<Rat>>,
    // SNF left transform and the diagonal positions of the generators
    snf_u: IntMatrix,
    positions: Vec<usize>,
}

/// Reduce each coordinate into `[0, 1)`.
pub(crate) fn reduce_mod_lattice(x: &[Rat]) -> Vec<Rat> {
    x.iter().map(|c| c - c.floor()).collect()
}

impl GlueGroup {
    pub(crate) fn of(lattice: &Lattice) -> Self {
        let g = lattice.gram().clone();
        let snf = smith_normal_form(&g);
        let diag = snf.diagonal();
        let mut orders = Vec::new();
        let mut lifts = Vec::new();
        let mut positions = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if d > &BigInt::one() {
                let col = snf.v.col(i);
                let lift: Vec<Rat> = col.iter().map(|c| Rat::new(c.clone(), d.clone())).collect();
                orders.push(d.clone());
                lifts.push(reduce_mod_lattice(&lift));
                positions.push(i);
            }
        }
        GlueGroup { gram: g, even: lattice.is_even(), orders, lifts, snf_u: snf.u, positions }
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn lifts(&self) -> &[Vec<Rat>] {
        &self.lifts
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn prime_support(&self) -> Vec<BigInt> {
        factorize(&self.order()).into_iter().map(|(p, _)| p).collect()
    }

    /// Coordinates of a dual vector with respect to the generators.
    pub fn coords(&self, x: &[Rat]) -> Result<Vec<BigInt>> {
        let y = self.gram.to_rat().mul_vec(x)?;
        if !y.iter().all(|v| v.is_integer()) {
            return Err(Error::InvalidArgument("vector is not in the dual lattice".into()));
        }
        let y: Vec<BigInt> = y.iter().map(|v| v.to_integer()).collect();
        let uy = self.snf_u.mul_vec(&y)?;
        Ok(self
            .positions
            .iter()
            .zip(&self.orders)
            .map(|(&p, d)| uy[p].mod_floor(d))
            .collect())
    }

    /// Canonical lift of the element with the given generator coefficients.
    pub fn lift_of(&self, coeffs: &[BigInt]) -> Vec<Rat> {
        let n = self.gram.rows();
        let mut x = vec![Rat::zero(); n];
        for (c, lift) in coeffs.iter().zip(&self.lifts) {
            for (xi, li) in x.iter_mut().zip(lift) {
                *xi += li * rat_int(c);
            }
        }
        reduce_mod_lattice(&x)
    }

    pub fn bilinear_lifts(&self, x: &[Rat], y: &[Rat]) -> TorsionValue {
        TorsionValue::mod1(&self.gram.to_rat().bilinear(x, y).expect("dimensions"))
    }

    pub fn quadratic_lift(&self, x: &[Rat]) -> Result<TorsionValue> {
        if !self.even {
            return Err(Error::OddLattice);
        }
        Ok(TorsionValue::mod2(&self.gram.to_rat().bilinear(x, x)?))
    }

    /// b̄(x̄, ȳ) for elements given by generator coefficients.
    pub fn torsion_bilinear(&self, x: &[BigInt], y: &[BigInt]) -> TorsionValue {
        self.bilinear_lifts(&self.lift_of(x), &self.lift_of(y))
    }

    /// q̄(x̄) = b(x, x) mod 2, for even lattices.
    pub fn torsion_quadratic(&self, x: &[BigInt]) -> Result<TorsionValue> {
        self.quadratic_lift(&self.lift_of(x))
    }

    /// Table of b̄(g_i, g_j) over the generators.
    pub fn bilinear_table(&self) -> Vec<Vec<TorsionValue>> {
        self.lifts
            .iter()
            .map(|x| self.lifts.iter().map(|y| self.bilinear_lifts(x, y)).collect())
            .collect()
    }

    /// Decomposition into Sylow p-subgroups, ordered by prime.
    pub fn sylow_decomposition(&self) -> Vec<SylowComponent> {
        let mut out = Vec::new();
        for p in self.prime_support() {
            let mut comp = SylowComponent {
                prime: p.clone(),
                orders: vec![],
                generators: vec![],
                source: vec![],
                killed_by_p: true,
            };
            for (k, d) in self.orders.iter().enumerate() {
                let v = valuation(d, &p);
                if v == 0 {
                    continue;
                }
                let pv = p.pow(v);
                let cof = d / &pv;
                let mut coeffs = vec![BigInt::zero(); self.orders.len()];
                coeffs[k] = cof.clone();
                comp.generators.push(self.lift_of(&coeffs));
                comp.orders.push(pv);
                comp.source.push((k, cof));
                comp.killed_by_p &= v == 1;
            }
            out.push(comp);
        }
        out
    }
}

/// The p-primary part `G(L)_p`.
#[derive(Clone, Debug)]
pub struct SylowComponent {
    pub prime: BigInt,
    pub orders: Vec<BigInt>,
    pub generators: Vec<Vec<Rat>>,
    source: Vec<(usize, BigInt)>,
    /// Whether `p·G(L)_p = 0`, i.e. the component is an F_p vector space.
    pub killed_by_p: bool,
}

impl SylowComponent {
    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    /// Coordinates of an element of the p-part with respect to the
    /// component's generators. Errors if the element has a component outside
    /// the p-part.
    pub fn coords(&self, group: &GlueGroup, x: &[Rat]) -> Result<Vec<BigInt>> {
        let full = group.coords(x)?;
        let mut used = vec![false; full.len()];
        let mut out = Vec::with_capacity(self.source.len());
        for ((k, cof), ord) in self.source.iter().zip(&self.orders) {
            used[*k] = true;
            let (q, r) = full[*k].div_rem(cof);
            if !r.is_zero() {
                return Err(Error::InvalidArgument(format!("element is not in the {}-part", self.prime)));
            }
            out.push(q.mod_floor(ord));
        }
        // components on generators without p-part must vanish
        if full.iter().zip(&used).any(|(c, u)| !u && !c.is_zero()) {
            return Err(Error::InvalidArgument(format!("element is not in the {}-part", self.prime)));
        }
        Ok(out)
    }

    /// Lift of the element with the given component coefficients.
    pub fn lift_of(&self, coeffs: &[BigInt]) -> Vec<Rat> {
        let n = self.generators.first().map_or(0, |g| g.len());
        let mut x = vec![Rat::zero(); n];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += gi * rat_int(c);
            }
        }
        reduce_mod_lattice(&x)
    }
}

/// Action of an isometry on one Sylow component.
#[derive(Clone, Debug)]
pub struct PrimeAction {
    pub prime: BigInt,
    /// Column j holds the coordinates of t̄(g_j).
    pub matrix: IntMatrix,
    /// Characteristic polynomial over F_p (coefficients in [0, p)), when the
    /// component is killed by p.
    pub charpoly_mod_p: Option<IntPoly>,
}

impl PrimeAction {
    /// Whether t̄ acts as the scalar `c` on this component.
    pub fn is_scalar(&self, c: i64, orders: &[BigInt]) -> bool {
        let n = self.matrix.rows();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let expect = if i == j { BigInt::from(c) } else { BigInt::zero() };
                (&self.matrix[(i, j)] - expect).mod_floor(&orders[i]).is_zero()
            })
        })
    }
}

/// The automorphism t̄ of `G(L)` induced by an isometry.
#[derive(Clone, Debug)]
pub struct GlueAction {
    pub group: GlueGroup,
    /// Column j holds the coordinates of t̄(g_j) on the full generator set.
    pub matrix: IntMatrix,
    pub components: Vec<SylowComponent>,
    pub primes: Vec<PrimeAction>,
}

fn apply(t: &IntMatrix, x: &[Rat]) -> Vec<Rat> {
    t.to_rat().mul_vec(x).expect("dimensions")
}

impl GlueAction {
    pub(crate) fn of(t: &Isometry) -> Self {
        let group = t.lattice().glue_group();
        let m = t.matrix();
        let r = group.num_generators();
        let mut matrix = IntMatrix::zeros(r, r);
        for (j, g) in group.lifts().iter().enumerate() {
            let c = group.coords(&apply(m, g)).expect("isometries preserve the dual");
            for i in 0..r {
                matrix[(i, j)] = c[i].clone();
            }
        }
        let components = group.sylow_decomposition();
        let primes = components
            .iter()
            .map(|comp| {
                let k = comp.dimension();
                let mut pm = IntMatrix::zeros(k, k);
                for (j, g) in comp.generators.iter().enumerate() {
                    let c = comp.coords(&group, &apply(m, g)).expect("t preserves G(L)_p");
                    for i in 0..k {
                        pm[(i, j)] = c[i].clone();
                    }
                }
                let charpoly_mod_p = comp.killed_by_p.then(|| {
                    crate::linalg::charpoly(&pm).expect("square").reduce_mod(&comp.prime)
                });
                PrimeAction { prime: comp.prime.clone(), matrix: pm, charpoly_mod_p }
            })
            .collect();
        GlueAction { group, matrix, components, primes }
    }

    pub fn prime(&self, p: &BigInt) -> Option<(&SylowComponent, &PrimeAction)> {
        let i = self.components.iter().position(|c| &c.prime == p)?;
        Some((&self.components[i], &self.primes[i]))
    }

    /// Whether the action is the identity on every generator.
    pub fn is_identity(&self) -> bool {
        let r = self.matrix.rows();
        (0..r).all(|i| {
            (0..r).all(|j| {
                let e = if i == j { BigInt::one() } else { BigInt::zero() };
                (&self.matrix[(i, j)] - e).mod_floor(&self.group.orders()[i]).is_zero()
            })
        })
    }

    /// Exhaustive check over generator pairs that t̄ preserves b̄ (and q̄ when
    /// the lattice is even).
    pub fn preserves_forms(&self) -> bool {
        let g = &self.group;
        let r = g.num_generators();
        let image = |j: usize| -> Vec<BigInt> { (0..r).map(|i| self.matrix[(i, j)].clone()).collect() };
        let unit = |j: usize| -> Vec<BigInt> {
            (0..r).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
        };
        for i in 0..r {
            for j in 0..=i {
                if g.torsion_bilinear(&unit(i), &unit(j)) != g.torsion_bilinear(&image(i), &image(j)) {
                    return false;
                }
            }
            if g.is_even() && g.torsion_quadratic(&unit(i)).ok() != g.torsion_quadratic(&image(i)).ok() {
                return false;
            }
        }
        true
    }
}
