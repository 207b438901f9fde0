//! Double Lie algebras with abelian core built from 2-cocycles.
//!
//! Conventions. A `p`-cochain is stored densely on all index tuples and is
//! alternating. The Chevalley–Eilenberg differential is
//!
//! ```text
//! (dω)(x₀,…,x_p) = Σ_s (−1)^s ρ(x_s) ω(…x̂_s…)
//!                + Σ_{s<t} (−1)^{s+t} ω([x_s, x_t], …x̂_s…x̂_t…)
//! ```
//!
//! and contraction inserts into the first slot, `(ι_u ω)(v) = ω(u, v)`.
//! With these, a 2-cochain `ω` on `𝔤₁ ⊕ 𝔤₂` is closed exactly when
//! `ω₂₀` and `ω₀₂` are closed and
//! `d(ι_a ω₁₁) = ρ₂(a)∘ω₂₀`, `d(ι_x ω₁₁) = ρ₁(x)∘ω₀₂`.
//!
//! The bracket on `𝔤₁ ⊕ 𝔤₂ ⊕ 𝔪` is
//! `[x+a+u, y+b+v] = [x,y] + [a,b] + ρ(x+a)v − ρ(y+b)u + ω(x+a, y+b)`.

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{dim_check, Error, Result};
use crate::linalg::{nullspace, Matrix};
use crate::report::CheckReport;
use crate::sample;
use crate::scalar::{Rational, Scalar};

/// Structure constants `[eᵢ, eⱼ] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebraSpec {
    pub dim: usize,
    c: Vec<Rational>,
}

impl LieAlgebraSpec {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c.push(f(i, j, k));
                }
            }
        }
        Self { dim, c }
    }

    pub fn from_nested(c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let dim = c.len();
        if c.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::DimMismatch("structure constants must be n×n×n".into()));
        }
        Ok(Self::from_fn(dim, |i, j, k| c[i][j][k].clone()))
    }

    /// Sets `[eᵢ, eⱼ]` from a sparse list and fills in antisymmetry.
    pub fn from_brackets(dim: usize, brackets: &[(usize, usize, &[(usize, i64)])]) -> Self {
        let mut alg = Self::abelian(dim);
        for &(i, j, out) in brackets {
            for &(k, v) in out {
                alg.set(i, j, k, Rational::from_i64(v));
                alg.set(j, i, k, Rational::from_i64(-v));
            }
        }
        alg
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_fn(dim, |_, _, _| Rational::zero())
    }

    /// `[e₁, e₂] = e₁`.
    pub fn aff1() -> Self {
        Self::from_brackets(2, &[(0, 1, &[(0, 1)])])
    }

    /// `[e₁, e₂] = e₃`.
    pub fn heisenberg() -> Self {
        Self::from_brackets(3, &[(0, 1, &[(2, 1)])])
    }

    /// Basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        Self::from_brackets(3, &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])])
    }

    /// `[eᵢ, eᵢ₊₁] = eᵢ₊₂` cyclically.
    pub fn so3() -> Self {
        Self::from_brackets(3, &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (2, 0, &[(1, 1)])])
    }

    /// `self ⊕ other` with the two summands commuting.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim;
        Self::from_fn(n + other.dim, |i, j, k| match (i < n, j < n, k < n) {
            (true, true, true) => self.get(i, j, k).clone(),
            (false, false, false) => other.get(i - n, j - n, k - n).clone(),
            _ => Rational::zero(),
        })
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let d = self.dim;
        self.c[(i * d + j) * d + k] = v;
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<Rational>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| (0..self.dim).map(|k| self.get(i, j, k).clone()).collect()).collect())
            .collect()
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let f = xi * yj;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        out
    }

    fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.dim).map(|k| self.get(i, j, k).clone()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }
}

/// `ρ(eᵢ)` for each basis element of the acting algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleSpec {
    pub dim: usize,
    pub action: Vec<Matrix<Rational>>,
}

impl ModuleSpec {
    pub fn new(dim: usize, action: Vec<Matrix<Rational>>) -> Result<Self> {
        dim_check(action.iter().all(|m| m.rows() == dim && m.cols() == dim), || {
            format!("module action matrices must be {dim}×{dim}")
        })?;
        Ok(Self { dim, action })
    }

    pub fn trivial(alg: &LieAlgebraSpec, dim: usize) -> Self {
        Self { dim, action: vec![Matrix::zeros(dim, dim); alg.dim] }
    }

    /// One-dimensional module `eᵢ ↦ λᵢ`; a module iff `λ` kills `[𝔤, 𝔤]`.
    pub fn character(weights: &[Rational]) -> Self {
        Self { dim: 1, action: weights.iter().map(|w| Matrix::scalar(w.clone())).collect() }
    }

    /// `ρ(eᵢ)_{kj} = c[i][j][k]`.
    pub fn adjoint(alg: &LieAlgebraSpec) -> Self {
        let n = alg.dim;
        Self {
            dim: n,
            action: (0..n).map(|i| Matrix::from_fn(n, n, |k, j| alg.get(i, j, k).clone())).collect(),
        }
    }

    /// `ρ₁ ⊗ I` on `𝔪₁ ⊗ 𝔪₂`.
    pub fn tensor_left(&self, other_dim: usize) -> Self {
        let id = Matrix::identity(other_dim);
        Self { dim: self.dim * other_dim, action: self.action.iter().map(|m| m.kron(&id)).collect() }
    }

    /// `I ⊗ ρ₂` on `𝔪₁ ⊗ 𝔪₂`.
    pub fn tensor_right(&self, other_dim: usize) -> Self {
        let id = Matrix::identity(other_dim);
        Self { dim: self.dim * other_dim, action: self.action.iter().map(|m| id.kron(m)).collect() }
    }

    /// The `𝔤₁ ⊕ 𝔤₂` action `ρ₁ + ρ₂` on a common carrier.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        dim_check(self.dim == other.dim, || "summand modules need the same carrier".into())?;
        Ok(Self { dim: self.dim, action: self.action.iter().chain(&other.action).cloned().collect() })
    }

    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(Matrix::is_zero)
    }

    pub fn act(&self, x: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (xi, m) in x.iter().zip(&self.action) {
            if xi.is_zero() {
                continue;
            }
            for (o, w) in out.iter_mut().zip(m.mul_vec(v)) {
                *o += xi * w;
            }
        }
        out
    }

    /// `ρ([eᵢ, eⱼ]) = [ρ(eᵢ), ρ(eⱼ)]` on all basis pairs.
    pub fn is_module_for(&self, alg: &LieAlgebraSpec) -> bool {
        if self.action.len() != alg.dim {
            return false;
        }
        (0..alg.dim).all(|i| {
            (0..alg.dim).all(|j| {
                let lhs = (0..alg.dim).fold(Matrix::zeros(self.dim, self.dim), |acc, k| {
                    acc.add(&self.action[k].scale(alg.get(i, j, k)))
                });
                lhs == self.action[i].commutator(&self.action[j])
            })
        })
    }
}

/// An alternating `degree`-cochain on an `n`-dimensional algebra with values
/// in an `m`-dimensional module, stored on all index tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    pub degree: usize,
    pub n: usize,
    pub m: usize,
    values: Vec<Rational>,
}

fn tuple_index(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

/// Strictly increasing `degree`-tuples from `0..n`.
pub fn increasing_tuples(n: usize, degree: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, degree, &mut Vec::new(), &mut out);
    out
}

impl Cochain {
    pub fn zero(degree: usize, n: usize, m: usize) -> Self {
        Self { degree, n, m, values: vec![Rational::zero(); n.pow(degree as u32) * m] }
    }

    /// Builds the alternating extension of `f`, which is called on strictly
    /// increasing tuples only.
    pub fn alternating(degree: usize, n: usize, m: usize, mut f: impl FnMut(&[usize]) -> Vec<Rational>) -> Self {
        let mut c = Self::zero(degree, n, m);
        for t in increasing_tuples(n, degree) {
            let v = f(&t);
            assert_eq!(v.len(), m, "cochain value length");
            c.set_alternating(&t, &v);
        }
        c
    }

    /// Coordinates on increasing tuples, value index fastest.
    pub fn from_coords(degree: usize, n: usize, m: usize, coords: &[Rational]) -> Result<Self> {
        let tuples = increasing_tuples(n, degree);
        dim_check(coords.len() == tuples.len() * m, || {
            format!("{} coordinates for a {degree}-cochain of size {}", coords.len(), tuples.len() * m)
        })?;
        let mut it = coords.chunks(m.max(1));
        let mut c = Self::zero(degree, n, m);
        for t in &tuples {
            let v = if m == 0 { Vec::new() } else { it.next().unwrap().to_vec() };
            c.set_alternating(t, &v);
        }
        Ok(c)
    }

    pub fn to_coords(&self) -> Vec<Rational> {
        increasing_tuples(self.n, self.degree).iter().flat_map(|t| self.get(t).to_vec()).collect()
    }

    fn set_alternating(&mut self, t: &[usize], v: &[Rational]) {
        for perm in permutations(self.degree) {
            let idx: Vec<usize> = perm.iter().map(|&p| t[p]).collect();
            let sign = permutation_is_odd(&perm);
            let base = tuple_index(self.n, &idx) * self.m;
            for (k, val) in v.iter().enumerate() {
                self.values[base + k] = if sign { -val.clone() } else { val.clone() };
            }
        }
    }

    pub fn get(&self, idx: &[usize]) -> &[Rational] {
        let base = tuple_index(self.n, idx) * self.m;
        &self.values[base..base + self.m]
    }

    /// Value on arbitrary vectors, by multilinearity.
    pub fn eval(&self, args: &[Vec<Rational>]) -> Vec<Rational> {
        assert_eq!(args.len(), self.degree, "cochain arity");
        let mut out = vec![Rational::zero(); self.m];
        let total = self.n.pow(self.degree as u32);
        for flat in 0..total {
            let mut rest = flat;
            let mut idx = vec![0; self.degree];
            for s in (0..self.degree).rev() {
                idx[s] = rest % self.n;
                rest /= self.n;
            }
            let coef = idx.iter().enumerate().fold(Rational::one(), |acc, (s, &i)| acc * &args[s][i]);
            if coef.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(self.get(&idx)) {
                *o += &coef * v;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.degree, self.n, self.m), (o.degree, o.n, o.m), "cochain shapes");
        Self {
            values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { values: self.values.iter().map(|v| v * r).collect(), ..self.clone() }
    }

    /// `(ι_u ω)(v₂,…) = ω(u, v₂,…)` for a basis element `u = e_i`.
    pub fn contract(&self, i: usize) -> Self {
        assert!(self.degree >= 1, "cannot contract a 0-cochain");
        let mut c = Self::zero(self.degree - 1, self.n, self.m);
        let stride = self.n.pow(self.degree as u32 - 1) * self.m;
        c.values.clone_from_slice(&self.values[i * stride..(i + 1) * stride]);
        c
    }

    /// Restriction to the coordinate subspace `offset..offset+len`.
    pub fn restrict(&self, offset: usize, len: usize) -> Self {
        let mut c = Self::zero(self.degree, len, self.m);
        for t in increasing_tuples(len, self.degree) {
            let shifted: Vec<usize> = t.iter().map(|i| i + offset).collect();
            let v = self.get(&shifted).to_vec();
            c.set_alternating(&t, &v);
        }
        c
    }

    /// Extension by zero from the subspace `offset..offset+self.n` of an
    /// `n`-dimensional algebra.
    pub fn extend(&self, offset: usize, n: usize) -> Self {
        let mut c = Self::zero(self.degree, n, self.m);
        for t in increasing_tuples(self.n, self.degree) {
            let shifted: Vec<usize> = t.iter().map(|i| i + offset).collect();
            c.set_alternating(&shifted, self.get(&t));
        }
        c
    }

    /// Postcomposition with a linear map of the values.
    pub fn map_values(&self, a: &Matrix<Rational>) -> Self {
        let mut c = Self::zero(self.degree, self.n, a.rows());
        for t in increasing_tuples(self.n, self.degree) {
            let v = a.mul_vec(self.get(&t));
            c.set_alternating(&t, &v);
        }
        c
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// The Chevalley–Eilenberg differential `C^p → C^{p+1}`.
pub fn ce_differential(alg: &LieAlgebraSpec, module: &ModuleSpec, c: &Cochain) -> Result<Cochain> {
    dim_check(c.n == alg.dim && c.m == module.dim && module.action.len() == alg.dim, || {
        format!(
            "cochain on ({}, {}) against algebra of dim {} and module of dim {}",
            c.n, c.m, alg.dim, module.dim
        )
    })?;
    let p = c.degree;
    let n = alg.dim;
    Ok(Cochain::alternating(p + 1, n, c.m, |x| {
        let mut out = vec![Rational::zero(); c.m];
        for s in 0..=p {
            let rest: Vec<usize> = x.iter().enumerate().filter(|&(i, _)| i != s).map(|(_, &v)| v).collect();
            let w = module.action[x[s]].mul_vec(c.get(&rest));
            for (o, v) in out.iter_mut().zip(w) {
                if s % 2 == 0 {
                    *o += v;
                } else {
                    *o -= v;
                }
            }
        }
        for s in 0..=p {
            for t in s + 1..=p {
                let rest: Vec<usize> =
                    x.iter().enumerate().filter(|&(i, _)| i != s && i != t).map(|(_, &v)| v).collect();
                let br = alg.basis_bracket(x[s], x[t]);
                let negative = (s + t) % 2 == 1;
                for (k, ck) in br.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    let mut idx = vec![k];
                    idx.extend(&rest);
                    for (o, v) in out.iter_mut().zip(c.get(&idx)) {
                        let term = ck * v;
                        if negative {
                            *o -= term;
                        } else {
                            *o += term;
                        }
                    }
                }
            }
        }
        out
    }))
}

/// `(ω₂₀, ω₁₁, ω₀₂)` on `𝔤₁ ⊕ 𝔤₂` with `dim 𝔤₁ = n1`, each still a cochain
/// on the whole sum.
pub fn split_cochain(c: &Cochain, n1: usize) -> Result<(Cochain, Cochain, Cochain)> {
    if c.degree != 2 || n1 > c.n {
        return Err(Error::Input(format!("cannot split a {}-cochain at {n1} of {}", c.degree, c.n)));
    }
    let part = |keep: fn(bool, bool) -> bool| {
        Cochain::alternating(2, c.n, c.m, |t| {
            if keep(t[0] < n1, t[1] < n1) {
                c.get(t).to_vec()
            } else {
                vec![Rational::zero(); c.m]
            }
        })
    };
    Ok((part(|a, b| a && b), part(|a, b| a != b), part(|a, b| !a && !b)))
}

/// The representation of `𝔤₁ ⊕ 𝔤₂` on a common module carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleModule {
    pub rho1: ModuleSpec,
    pub rho2: ModuleSpec,
}

impl DoubleModule {
    pub fn new(g1: &LieAlgebraSpec, g2: &LieAlgebraSpec, rho1: ModuleSpec, rho2: ModuleSpec) -> Result<Self> {
        if rho1.dim != rho2.dim {
            return Err(Error::Input("the two actions need a common carrier".into()));
        }
        if !rho1.is_module_for(g1) || !rho2.is_module_for(g2) {
            return Err(Error::Input("action matrices do not define modules".into()));
        }
        for (i, a) in rho1.action.iter().enumerate() {
            for (j, b) in rho2.action.iter().enumerate() {
                if !a.commutator(b).is_zero() {
                    return Err(Error::Input(format!("rho1(e{i}) and rho2(f{j}) do not commute")));
                }
            }
        }
        Ok(Self { rho1, rho2 })
    }

    pub fn trivial(g1: &LieAlgebraSpec, g2: &LieAlgebraSpec, dim: usize) -> Self {
        Self { rho1: ModuleSpec::trivial(g1, dim), rho2: ModuleSpec::trivial(g2, dim) }
    }

    pub fn dim(&self) -> usize {
        self.rho1.dim
    }

    pub fn total(&self) -> ModuleSpec {
        self.rho1.direct_sum(&self.rho2).expect("carrier checked at construction")
    }
}

/// The four conditions of the split criterion, reported separately:
/// `omega20_closed`, `omega02_closed`, `compat_g1` and `compat_g2`.
pub fn split_cocycle_check(
    g1: &LieAlgebraSpec,
    g2: &LieAlgebraSpec,
    module: &DoubleModule,
    c: &Cochain,
) -> Result<CheckReport> {
    let (n1, n2) = (g1.dim, g2.dim);
    if c.degree != 2 || c.n != n1 + n2 || c.m != module.dim() {
        return Err(Error::Input("2-cochain does not match the algebras and module".into()));
    }
    let w20 = c.restrict(0, n1);
    let w02 = c.restrict(n1, n2);
    let mut report = CheckReport::default();

    let d20 = ce_differential(g1, &module.rho1, &w20)?;
    report.push("omega20_closed".into(), d20.is_zero(), || format!("d omega20 = {d20:?}"));
    let d02 = ce_differential(g2, &module.rho2, &w02)?;
    report.push("omega02_closed".into(), d02.is_zero(), || format!("d omega02 = {d02:?}"));

    let mut bad1 = None;
    for a in 0..n2 {
        let lhs = ce_differential(g1, &module.rho1, &c.contract(n1 + a).restrict(0, n1))?;
        let rhs = w20.map_values(&module.rho2.action[a]);
        if lhs != rhs && bad1.is_none() {
            bad1 = Some(format!("a = f{a}: d(i_a omega11) = {:?}, rho2(a) omega20 = {:?}", lhs.to_coords(), rhs.to_coords()));
        }
    }
    report.push("compat_g1".into(), bad1.is_none(), || bad1.clone().unwrap_or_default());

    let mut bad2 = None;
    for x in 0..n1 {
        let lhs = ce_differential(g2, &module.rho2, &c.contract(x).restrict(n1, n2))?;
        let rhs = w02.map_values(&module.rho1.action[x]);
        if lhs != rhs && bad2.is_none() {
            bad2 = Some(format!("x = e{x}: d(i_x omega11) = {:?}, rho1(x) omega02 = {:?}", lhs.to_coords(), rhs.to_coords()));
        }
    }
    report.push("compat_g2".into(), bad2.is_none(), || bad2.clone().unwrap_or_default());
    Ok(report)
}

/// Inputs of the wedge construction. `m1`, `m2` are modules of `g1`, `g2`;
/// the result takes values in `𝔪₁ ⊗ 𝔪₂` (index `p·dim 𝔪₂ + q`) acted on by
/// `ρ₁ ⊗ I + I ⊗ ρ₂`, so `w20`, `w02` are `𝔪₁ ⊗ 𝔪₂`-valued.
#[derive(Debug, Clone)]
pub struct WedgeInput<'a> {
    pub g1: &'a LieAlgebraSpec,
    pub g2: &'a LieAlgebraSpec,
    pub m1: &'a ModuleSpec,
    pub m2: &'a ModuleSpec,
    pub theta1: &'a Cochain,
    pub theta2: &'a Cochain,
    pub w20: &'a Cochain,
    pub w02: &'a Cochain,
}

/// `ω = ω₂₀ + θ₁∧θ₂ + ω₀₂` with
/// `(θ₁∧θ₂)(x+a, y+b) = θ₁(x)⊗θ₂(b) − θ₁(y)⊗θ₂(a)`.
///
/// `ω₂₀` must be killed by `ρ₂` and `ω₀₂` by `ρ₁`; otherwise the mixed
/// conditions cannot hold.
pub fn wedge_construct(w: &WedgeInput<'_>) -> Result<(Cochain, DoubleModule)> {
    let (n1, n2) = (w.g1.dim, w.g2.dim);
    let (d1, d2) = (w.m1.dim, w.m2.dim);
    let shape_ok = w.theta1.degree == 1
        && w.theta2.degree == 1
        && (w.theta1.n, w.theta1.m) == (n1, d1)
        && (w.theta2.n, w.theta2.m) == (n2, d2)
        && (w.w20.degree, w.w20.n, w.w20.m) == (2, n1, d1 * d2)
        && (w.w02.degree, w.w02.n, w.w02.m) == (2, n2, d1 * d2);
    if !shape_ok {
        return Err(Error::Input("wedge inputs have inconsistent shapes".into()));
    }
    let rho1 = w.m1.tensor_left(d2);
    let rho2 = w.m2.tensor_right(d1);
    let module = DoubleModule::new(w.g1, w.g2, rho1, rho2)?;
    if !ce_differential(w.g1, w.m1, w.theta1)?.is_zero() {
        return Err(Error::Input("theta1 is not a 1-cocycle".into()));
    }
    if !ce_differential(w.g2, w.m2, w.theta2)?.is_zero() {
        return Err(Error::Input("theta2 is not a 1-cocycle".into()));
    }
    if !ce_differential(w.g1, &module.rho1, w.w20)?.is_zero() {
        return Err(Error::Input("omega20 is not a 2-cocycle".into()));
    }
    if !ce_differential(w.g2, &module.rho2, w.w02)?.is_zero() {
        return Err(Error::Input("omega02 is not a 2-cocycle".into()));
    }
    if module.rho2.action.iter().any(|a| !w.w20.map_values(a).is_zero()) {
        return Err(Error::Input("omega20 is not invariant under the second action".into()));
    }
    if module.rho1.action.iter().any(|a| !w.w02.map_values(a).is_zero()) {
        return Err(Error::Input("omega02 is not invariant under the first action".into()));
    }
    let n = n1 + n2;
    let tensor = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        u.iter().flat_map(|a| v.iter().map(move |b| a * b)).collect()
    };
    let mixed = Cochain::alternating(2, n, d1 * d2, |t| {
        let (i, j) = (t[0], t[1]);
        if i < n1 && j >= n1 {
            tensor(w.theta1.get(&[i]), w.theta2.get(&[j - n1]))
        } else {
            vec![Rational::zero(); d1 * d2]
        }
    });
    let omega = w.w20.extend(0, n).add(&mixed).add(&w.w02.extend(n1, n));
    Ok((omega, module))
}

/// `𝔤₁ ⊕ 𝔤₂ ⊕ 𝔪` with the core `𝔪` marked.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleLieAlgebra {
    pub lie: LieAlgebraSpec,
    pub n1: usize,
    pub n2: usize,
    pub core: usize,
}

impl DoubleLieAlgebra {
    /// The core `𝔪` is central.
    pub fn core_is_central(&self) -> bool {
        let g = self.n1 + self.n2;
        (g..self.lie.dim).all(|p| (0..self.lie.dim).all(|i| (0..self.lie.dim).all(|k| self.lie.get(i, p, k).is_zero())))
    }

    /// Abelian ideal core and a quotient map that is a homomorphism onto
    /// `𝔤₁ ⊕ 𝔤₂`, given the summand algebras.
    pub fn exactness_check(&self, g1: &LieAlgebraSpec, g2: &LieAlgebraSpec) -> CheckReport {
        let g = self.n1 + self.n2;
        let n = self.lie.dim;
        let quotient = g1.direct_sum(g2);
        let mut report = CheckReport::default();
        let abelian = (g..n).all(|p| (g..n).all(|q| (0..n).all(|k| self.lie.get(p, q, k).is_zero())));
        report.push("core_abelian".into(), abelian, || "two core elements do not commute".into());
        let ideal = (g..n).all(|p| (0..n).all(|i| (0..g).all(|k| self.lie.get(i, p, k).is_zero())));
        report.push("core_ideal".into(), ideal, || "bracket with the core leaves the core".into());
        let hom = (0..g).all(|i| (0..g).all(|j| (0..g).all(|k| self.lie.get(i, j, k) == quotient.get(i, j, k))));
        report.push("quotient_homomorphism".into(), hom, || "quotient map is not a homomorphism".into());
        report
    }
}

/// Requires the split criterion to pass, then assembles the bracket.
pub fn build_double_algebra(
    g1: &LieAlgebraSpec,
    g2: &LieAlgebraSpec,
    module: &DoubleModule,
    c: &Cochain,
) -> Result<DoubleLieAlgebra> {
    let report = split_cocycle_check(g1, g2, module, c)?;
    if let Some(f) = report.failures().next() {
        return Err(Error::NotACocycle(format!("{}: {}", f.name, f.counterexample.clone().unwrap_or_default())));
    }
    let base = g1.direct_sum(g2);
    let rho = module.total();
    let g = base.dim;
    let m = module.dim();
    let lie = LieAlgebraSpec::from_fn(g + m, |i, j, k| match (i < g, j < g) {
        (true, true) if k < g => base.get(i, j, k).clone(),
        (true, true) => c.get(&[i, j])[k - g].clone(),
        (true, false) if k >= g => rho.action[i].get(k - g, j - g).clone(),
        (false, true) if k >= g => -rho.action[j].get(k - g, i - g).clone(),
        _ => Rational::zero(),
    });
    Ok(DoubleLieAlgebra { lie, n1: g1.dim, n2: g2.dim, core: m })
}

/// Antisymmetry and the Jacobi identity on all basis triples, exactly.
pub fn jacobi_check(alg: &LieAlgebraSpec) -> CheckReport {
    let n = alg.dim;
    let mut report = CheckReport::default();
    let mut anti = None;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if anti.is_none() && *alg.get(i, j, k) != -alg.get(j, i, k).clone() {
                    anti = Some(format!("c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]"));
                }
            }
        }
    }
    report.push("antisymmetry".into(), anti.is_none(), || anti.clone().unwrap_or_default());
    let mut jac = None;
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let e = |t: usize| crate::linalg::unit::<Rational>(n, t);
                let a = alg.bracket(&e(i), &alg.bracket(&e(j), &e(k)));
                let b = alg.bracket(&e(j), &alg.bracket(&e(k), &e(i)));
                let c = alg.bracket(&e(k), &alg.bracket(&e(i), &e(j)));
                let sum: Vec<Rational> = a.iter().zip(&b).zip(&c).map(|((x, y), z)| x + y + z).collect();
                if sum.iter().any(|v| !v.is_zero()) {
                    jac = Some(format!("Jacobi fails on (e{i}, e{j}, e{k})"));
                    break 'outer;
                }
            }
        }
    }
    report.push("jacobi".into(), jac.is_none(), || jac.clone().unwrap_or_default());
    report
}

/// Basis of the closed `degree`-cochains, in [`Cochain::to_coords`] form.
pub fn cocycle_basis(alg: &LieAlgebraSpec, module: &ModuleSpec, degree: usize) -> Result<Vec<Cochain>> {
    let width = increasing_tuples(alg.dim, degree).len() * module.dim;
    let images: Vec<Vec<Rational>> = (0..width)
        .map(|col| {
            let mut e = vec![Rational::zero(); width];
            e[col] = Rational::one();
            let c = Cochain::from_coords(degree, alg.dim, module.dim, &e)?;
            Ok(ce_differential(alg, module, &c)?.to_coords())
        })
        .collect::<Result<_>>()?;
    let height = images.first().map_or(0, Vec::len);
    let rows: Vec<Vec<Rational>> = (0..height).map(|r| images.iter().map(|col| col[r].clone()).collect()).collect();
    let kernel = if height == 0 {
        (0..width)
            .map(|c| {
                let mut e = vec![Rational::zero(); width];
                e[c] = Rational::one();
                e
            })
            .collect()
    } else {
        nullspace(&rows, width)
    };
    kernel.iter().map(|v| Cochain::from_coords(degree, alg.dim, module.dim, v)).collect()
}

/// Random combination of basis cochains with small rational weights.
pub fn random_combination<R: Rng + ?Sized>(rng: &mut R, basis: &[Cochain], degree: usize, n: usize, m: usize) -> Cochain {
    basis.iter().fold(Cochain::zero(degree, n, m), |acc, b| acc.add(&b.scale(&sample::scalar(rng))))
}

pub fn random_cochain<R: Rng + ?Sized>(rng: &mut R, degree: usize, n: usize, m: usize) -> Cochain {
    let len = increasing_tuples(n, degree).len() * m;
    let coords: Vec<Rational> = (0..len).map(|_| sample::scalar(rng)).collect();
    Cochain::from_coords(degree, n, m, &coords).expect("length matches")
}

/// The small algebras used by the suites and tests.
pub fn catalog() -> Vec<(&'static str, LieAlgebraSpec)> {
    vec![
        ("abelian1", LieAlgebraSpec::abelian(1)),
        ("abelian2", LieAlgebraSpec::abelian(2)),
        ("aff1", LieAlgebraSpec::aff1()),
        ("heisenberg", LieAlgebraSpec::heisenberg()),
        ("sl2", LieAlgebraSpec::sl2()),
        ("so3", LieAlgebraSpec::so3()),
    ]
}

/// Named `(𝔤₁, 𝔤₂, module)` fixtures of dimension at most three per side,
/// with trivial and nontrivial actions.
pub fn double_fixtures() -> Vec<(String, LieAlgebraSpec, LieAlgebraSpec, DoubleModule)> {
    let mut out = Vec::new();
    let small: Vec<_> = catalog().into_iter().filter(|(_, a)| a.dim <= 3).collect();
    for (n1, g1) in &small {
        for (n2, g2) in &small {
            if g1.dim + g2.dim <= 5 {
                out.push((format!("{n1}+{n2}/trivial1"), g1.clone(), g2.clone(), DoubleModule::trivial(g1, g2, 1)));
            }
        }
    }
    let a1 = LieAlgebraSpec::abelian(1);
    let aff = LieAlgebraSpec::aff1();
    let chars = DoubleModule::new(
        &a1,
        &a1,
        ModuleSpec::character(&[Rational::one()]),
        ModuleSpec::character(&[Rational::from_i64(2)]),
    )
    .expect("scalar actions commute");
    out.push(("abelian1+abelian1/characters".into(), a1.clone(), a1.clone(), chars));
    let adj = DoubleModule::new(&aff, &a1, ModuleSpec::adjoint(&aff), ModuleSpec::trivial(&a1, 2))
        .expect("trivial second action");
    out.push(("aff1+abelian1/adjoint".into(), aff.clone(), a1.clone(), adj));
    let heis = LieAlgebraSpec::heisenberg();
    let adj = DoubleModule::new(&a1, &heis, ModuleSpec::trivial(&a1, 3), ModuleSpec::adjoint(&heis))
        .expect("trivial first action");
    out.push(("abelian1+heisenberg/adjoint".into(), a1, heis, adj));
    out
}
