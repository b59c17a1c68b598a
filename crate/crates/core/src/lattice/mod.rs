//! Brute-force partition functions of the 8VSOS model on an m×n lattice
//! with fixed boundary.
//!
//! Columns carry the spectral parameters `w_1..w_m` from left to right and
//! rows carry `z_1..z_n` from top to bottom. The boundary consists of the
//! bottom `a` and top `b` edges (length m, left to right) and the left `c`
//! and right `d` edges (length n, top to bottom). The top-left face has
//! label 0 and crossing an edge labelled `x` eastwards or southwards adds
//! `ω(x) = ±1`. The vertex in row `i`, column `j` with south, north, west,
//! east edges `(a, b, c, d)` carries the weight `R^{bd}_{ac}(λ − α, w_j/z_i)`
//! where `α` is the label of its north-west face.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{cplx, ratio, Accumulator, EllipticParams, Real, Total};

pub mod identities;

/// Largest `m·n` the enumerators accept.
pub const ENUMERATION_CAP: usize = 25;

/// An edge label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `ω(±) = ±1`.
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i32) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Parses a string of `+` and `-` characters.
pub fn parse_signs(s: &str) -> Result<Vec<Sign>> {
    s.chars()
        .map(|ch| match ch {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(Error::Domain(format!("invalid sign character {ch:?}"))),
        })
        .collect()
}

pub fn format_signs(v: &[Sign]) -> String {
    v.iter()
        .map(|s| if *s == Sign::Plus { '+' } else { '-' })
        .collect()
}

/// `|x| = ω(x_1) + … + ω(x_n)`.
pub fn charge(v: &[Sign]) -> i32 {
    v.iter().map(|s| s.value()).sum()
}

/// The vector with every entry flipped and the order reversed.
pub fn flip_reverse(v: &[Sign]) -> Vec<Sign> {
    v.iter().rev().map(|s| s.flip()).collect()
}

/// All sign vectors of length `n`, in lexicographic order with `+` first.
pub fn all_sign_vectors(n: usize) -> impl Iterator<Item = Vec<Sign>> {
    assert!(n < 32);
    (0..1u32 << n).map(move |k| {
        (0..n)
            .map(|i| {
                if k >> (n - 1 - i) & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect()
    })
}

/// The four boundary sign vectors of a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Boundary {
    pub bottom: Vec<Sign>,
    pub top: Vec<Sign>,
    pub left: Vec<Sign>,
    pub right: Vec<Sign>,
}

impl Boundary {
    pub fn new(
        bottom: Vec<Sign>,
        top: Vec<Sign>,
        left: Vec<Sign>,
        right: Vec<Sign>,
    ) -> Result<Self> {
        if bottom.len() != top.len() {
            return Err(Error::Domain(
                "bottom and top boundaries differ in length".into(),
            ));
        }
        if left.len() != right.len() {
            return Err(Error::Domain(
                "left and right boundaries differ in length".into(),
            ));
        }
        Ok(Self {
            bottom,
            top,
            left,
            right,
        })
    }

    /// Boundary from `+`/`-` strings in the order bottom, top, left, right.
    pub fn parse(bottom: &str, top: &str, left: &str, right: &str) -> Result<Self> {
        Self::new(
            parse_signs(bottom)?,
            parse_signs(top)?,
            parse_signs(left)?,
            parse_signs(right)?,
        )
    }

    pub fn uniform(m: usize, n: usize, sign: Sign) -> Self {
        Self {
            bottom: vec![sign; m],
            top: vec![sign; m],
            left: vec![sign; n],
            right: vec![sign; n],
        }
    }

    /// Domain wall boundary on an n×n lattice: bottom and right `+`, top and left `−`.
    pub fn domain_wall(n: usize) -> Self {
        Self {
            bottom: vec![Sign::Plus; n],
            top: vec![Sign::Minus; n],
            left: vec![Sign::Minus; n],
            right: vec![Sign::Plus; n],
        }
    }

    /// The reflected domain wall boundary: bottom and right `−`, top and left `+`.
    pub fn domain_wall_dual(n: usize) -> Self {
        Self {
            bottom: vec![Sign::Minus; n],
            top: vec![Sign::Plus; n],
            left: vec![Sign::Plus; n],
            right: vec![Sign::Minus; n],
        }
    }

    /// Number of columns `m`.
    pub fn columns(&self) -> usize {
        self.bottom.len()
    }

    /// Number of rows `n`.
    pub fn rows(&self) -> usize {
        self.left.len()
    }

    /// `|a| + |c| = |b| + |d|`, necessary for a nonzero partition function.
    pub fn is_balanced(&self) -> bool {
        charge(&self.bottom) + charge(&self.left) == charge(&self.top) + charge(&self.right)
    }

    /// Every balanced boundary of an m×n lattice, in a fixed order.
    pub fn all_balanced(m: usize, n: usize) -> Vec<Boundary> {
        let mut out = Vec::new();
        for bottom in all_sign_vectors(m) {
            for top in all_sign_vectors(m) {
                for left in all_sign_vectors(n) {
                    for right in all_sign_vectors(n) {
                        let b = Boundary {
                            bottom: bottom.clone(),
                            top: top.clone(),
                            left: left.clone(),
                            right,
                        };
                        if b.is_balanced() {
                            out.push(b);
                        }
                    }
                }
            }
        }
        out
    }
}

/// The entry `R^{bd}_{ac}(λ, z)` of the dynamical R-matrix.
///
/// Patterns violating `ω(a) + ω(c) = ω(b) + ω(d)` give 0; the four uniform
/// patterns give 1.
pub fn r_entry<T: Real>(
    params: &EllipticParams<T>,
    a: Sign,
    b: Sign,
    c: Sign,
    d: Sign,
    lambda: Complex<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    use Sign::{Minus, Plus};
    if a == b && b == c && c == d {
        return Ok(Complex::one());
    }
    let one = Complex::<T>::one();
    let q = params.q();
    let th = |x| params.theta(x);
    let qp = |x| params.q_power(x);
    let (num, den) = match (a, c, b, d) {
        (Plus, Minus, Plus, Minus) => (
            th(z)? * th(qp(lambda + cplx(2.0, 0.0))?)?,
            th(q * z)? * th(qp(lambda + one)?)?,
        ),
        (Plus, Minus, Minus, Plus) => (
            th(q)? * th(qp(-lambda - one)? * z)?,
            th(q * z)? * th(qp(-lambda - one)?)?,
        ),
        (Minus, Plus, Plus, Minus) => (
            th(q)? * th(qp(lambda + one)? * z)?,
            th(q * z)? * th(qp(lambda + one)?)?,
        ),
        (Minus, Plus, Minus, Plus) => (
            th(z)? * th(qp(-lambda)?)?,
            th(q * z)? * th(qp(-lambda - one)?)?,
        ),
        _ => return Ok(Complex::zero()),
    };
    ratio(num, den, "R-matrix entry")
}

/// A vertex visited by the enumerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub row: usize,
    pub col: usize,
    pub south: Sign,
    pub north: Sign,
    pub west: Sign,
    pub east: Sign,
    /// Label of the north-west face.
    pub face: i32,
}

/// A complete edge labelling consistent with the boundary and the ice rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeState {
    /// `vertical[i][j]` is the edge above row `i` in column `j`; row `n` holds the bottom boundary.
    pub vertical: Vec<Vec<Sign>>,
    /// `horizontal[i][j]` is the edge left of column `j` in row `i`; column `m` holds the right boundary.
    pub horizontal: Vec<Vec<Sign>>,
    /// `faces[i][j]` is the label of the face north-west of the vertex `(i, j)`, for `i ≤ n`, `j ≤ m`.
    pub faces: Vec<Vec<i32>>,
}

fn check_capacity(b: &Boundary) -> Result<()> {
    let size = b.columns() * b.rows();
    if size > ENUMERATION_CAP {
        return Err(Error::Capacity {
            what: "lattice",
            size,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// Row-major depth-first walk over the states of a lattice.
///
/// `weigh` is called at each vertex with the running weight and returns the
/// updated one (`None` prunes the branch); `leaf` receives every completed
/// state's weight together with the vertical and horizontal edge arrays.
struct Walker<'b, W, F, L> {
    b: &'b Boundary,
    vertical: Vec<Vec<Sign>>,
    horizontal: Vec<Vec<Sign>>,
    weigh: F,
    leaf: L,
    _w: std::marker::PhantomData<W>,
}

impl<'b, W: Copy, F, L> Walker<'b, W, F, L>
where
    F: FnMut(W, &Vertex) -> Result<Option<W>>,
    L: FnMut(W, &[Vec<Sign>], &[Vec<Sign>]) -> Result<()>,
{
    fn new(b: &'b Boundary, weigh: F, leaf: L) -> Self {
        let (m, n) = (b.columns(), b.rows());
        let mut vertical = vec![vec![Sign::Plus; m]; n + 1];
        vertical[0] = b.top.clone();
        vertical[n] = b.bottom.clone();
        let mut horizontal = vec![vec![Sign::Plus; m + 1]; n];
        for i in 0..n {
            horizontal[i][0] = b.left[i];
            horizontal[i][m] = b.right[i];
        }
        Self {
            b,
            vertical,
            horizontal,
            weigh,
            leaf,
            _w: std::marker::PhantomData,
        }
    }

    fn run(&mut self, init: W) -> Result<()> {
        let (m, n) = (self.b.columns(), self.b.rows());
        if !self.b.is_balanced() {
            return Ok(());
        }
        if m == 0 || n == 0 {
            let straight = if m == 0 {
                self.b.left == self.b.right
            } else {
                self.b.bottom == self.b.top
            };
            if straight {
                (self.leaf)(init, &self.vertical, &self.horizontal)?;
            }
            return Ok(());
        }
        self.visit(0, 0, 0, 0, init)
    }

    fn visit(&mut self, i: usize, j: usize, face: i32, row_face: i32, weight: W) -> Result<()> {
        let b = self.b;
        let (m, n) = (b.columns(), b.rows());
        let north = self.vertical[i][j];
        let west = self.horizontal[i][j];
        let choices: &[Sign] = if i + 1 == n {
            std::slice::from_ref(&b.bottom[j])
        } else {
            &[Sign::Plus, Sign::Minus]
        };
        for &south in choices {
            let Some(east) = Sign::from_value(south.value() + west.value() - north.value()) else {
                continue;
            };
            if j + 1 == m && east != b.right[i] {
                continue;
            }
            let v = Vertex {
                row: i,
                col: j,
                south,
                north,
                west,
                east,
                face,
            };
            let Some(next) = (self.weigh)(weight, &v)? else {
                continue;
            };
            if i + 1 < n {
                self.vertical[i + 1][j] = south;
            }
            if j + 1 < m {
                self.horizontal[i][j + 1] = east;
                self.visit(i, j + 1, face + north.value(), row_face, next)?;
            } else if i + 1 < n {
                let nf = row_face + b.left[i].value();
                self.visit(i + 1, 0, nf, nf, next)?;
            } else {
                (self.leaf)(next, &self.vertical, &self.horizontal)?;
            }
        }
        Ok(())
    }
}

fn faces_of(vertical: &[Vec<Sign>], horizontal: &[Vec<Sign>], m: usize, n: usize) -> Vec<Vec<i32>> {
    let mut faces = vec![vec![0i32; m + 1]; n + 1];
    for i in 0..=n {
        if i > 0 {
            faces[i][0] = faces[i - 1][0] + horizontal[i - 1][0].value();
        }
        for j in 0..m {
            faces[i][j + 1] = faces[i][j] + vertical[i][j].value();
        }
    }
    faces
}

/// Calls `f` on every state with the given boundary, in row-major DFS order.
pub fn for_each_state(boundary: &Boundary, mut f: impl FnMut(&LatticeState)) -> Result<()> {
    check_capacity(boundary)?;
    let (m, n) = (boundary.columns(), boundary.rows());
    let mut walker = Walker::new(
        boundary,
        |w: (), _v: &Vertex| Ok(Some(w)),
        |_w, vertical: &[Vec<Sign>], horizontal: &[Vec<Sign>]| {
            let state = LatticeState {
                vertical: vertical.to_vec(),
                horizontal: horizontal.to_vec(),
                faces: faces_of(vertical, horizontal, m, n),
            };
            f(&state);
            Ok(())
        },
    );
    walker.run(())
}

/// All states with the given boundary (empty when the boundary is unbalanced).
pub fn enumerate_states(boundary: &Boundary) -> Result<Vec<LatticeState>> {
    let mut out = Vec::new();
    for_each_state(boundary, |s| out.push(s.clone()))?;
    Ok(out)
}

fn check_sizes<T>(w: &[Complex<T>], z: &[Complex<T>], b: &Boundary) -> Result<()> {
    if w.len() != b.columns() || z.len() != b.rows() {
        return Err(Error::Domain(format!(
            "spectral vectors of length {}×{} do not fit a {}×{} boundary",
            w.len(),
            z.len(),
            b.columns(),
            b.rows()
        )));
    }
    Ok(())
}

/// The partition function together with the absolute mass of its state sum.
pub fn partition_function_total<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    boundary: &Boundary,
) -> Result<Total<T>> {
    check_sizes(w, z, boundary)?;
    check_capacity(boundary)?;
    let mut acc = Accumulator::new();
    let mut walker = Walker::new(
        boundary,
        |weight: Complex<T>, v: &Vertex| {
            let r = r_entry(
                params,
                v.south,
                v.north,
                v.west,
                v.east,
                lambda - crate::numerics::int::<T>(v.face as i64),
                w[v.col] / z[v.row],
            )
            .map_err(|e| match e {
                Error::Singular(_) => Error::Singular(format!(
                    "R-matrix entry at vertex (row {}, column {})",
                    v.row + 1,
                    v.col + 1
                )),
                other => other,
            })?;
            let next = weight * r;
            Ok(if next.is_zero() { None } else { Some(next) })
        },
        |weight, _: &[Vec<Sign>], _: &[Vec<Sign>]| {
            acc.add(weight);
            Ok(())
        },
    );
    walker.run(Complex::one())?;
    let t = acc.total();
    crate::numerics::finite(t.value, "partition function")?;
    Ok(t)
}

/// `Z(λ; w; z; a, b, c, d)`: the sum over states of the product of vertex weights.
pub fn partition_function<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
    boundary: &Boundary,
) -> Result<Complex<T>> {
    Ok(partition_function_total(params, lambda, w, z, boundary)?.value)
}

/// The partition function with domain wall boundary on an n×n lattice.
pub fn domain_wall_pf<T: Real>(
    params: &EllipticParams<T>,
    lambda: Complex<T>,
    w: &[Complex<T>],
    z: &[Complex<T>],
) -> Result<Complex<T>> {
    if w.len() != z.len() {
        return Err(Error::Domain("domain wall lattice must be square".into()));
    }
    partition_function(params, lambda, w, z, &Boundary::domain_wall(w.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> EllipticParams<f64> {
        EllipticParams::new(cplx(0.13, 0.21), cplx(0.55, 0.3)).unwrap()
    }

    #[test]
    fn ice_rule_zero() {
        use Sign::*;
        let p = params();
        let v = r_entry(&p, Plus, Plus, Plus, Minus, cplx(0.3, 0.1), cplx(1.2, 0.4)).unwrap();
        assert_eq!(v, Complex::zero());
    }

    #[test]
    fn state_counts() {
        assert_eq!(
            enumerate_states(&Boundary::domain_wall(1)).unwrap().len(),
            1
        );
        assert_eq!(
            enumerate_states(&Boundary::domain_wall(2)).unwrap().len(),
            2
        );
        assert_eq!(
            enumerate_states(&Boundary::domain_wall(3)).unwrap().len(),
            7
        );
        assert_eq!(
            enumerate_states(&Boundary::domain_wall(4)).unwrap().len(),
            42
        );
        let unbalanced = Boundary::parse("+", "-", "+", "+").unwrap();
        assert!(enumerate_states(&unbalanced).unwrap().is_empty());
    }

    #[test]
    fn states_obey_face_rules() {
        for s in enumerate_states(&Boundary::domain_wall(3)).unwrap() {
            assert_eq!(s.faces[0][0], 0);
            for i in 0..3 {
                for j in 0..3 {
                    let (south, north) = (s.vertical[i + 1][j], s.vertical[i][j]);
                    let (west, east) = (s.horizontal[i][j], s.horizontal[i][j + 1]);
                    assert_eq!(south.value() + west.value(), north.value() + east.value());
                    assert_eq!(
                        s.faces[i + 1][j + 1],
                        s.faces[i][j] + north.value() + east.value()
                    );
                }
            }
        }
    }

    #[test]
    fn capacity_is_enforced() {
        let b = Boundary::uniform(6, 5, Sign::Plus);
        assert!(matches!(enumerate_states(&b), Err(Error::Capacity { .. })));
    }

    #[test]
    fn empty_lattices() {
        let p = params();
        let b = Boundary::parse("", "", "+-", "+-").unwrap();
        let z = [cplx(1.1, 0.2), cplx(0.7, -0.3)];
        assert_eq!(
            partition_function(&p, cplx(0.2, 0.0), &[], &z, &b).unwrap(),
            Complex::one()
        );
        let b = Boundary::parse("", "", "+-", "-+").unwrap();
        assert_eq!(
            partition_function(&p, cplx(0.2, 0.0), &[], &z, &b).unwrap(),
            Complex::zero()
        );
    }
}
