//! Component arrays of [`Expr`].
//!
//! A tensor of order `k` in dimension `n` stores `n^k` components row-major:
//! the flat position of `(i_1, ..., i_k)` is `sum i_j * n^(k-j)`. Whether an
//! index is up or down is a convention of the producing function; only the
//! (1,3) curvature lift carries an upper index, stored last.

use pseudosym_expr::{Context, Expr};
use rayon::prelude::*;
use smallvec::SmallVec;

pub type Index = SmallVec<[usize; 8]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    n: usize,
    order: usize,
    comps: Vec<Expr>,
}

impl Tensor {
    pub fn zeros(n: usize, order: usize) -> Self {
        Tensor {
            n,
            order,
            comps: vec![Expr::zero(); n.pow(order as u32)],
        }
    }

    /// Scalar (order 0) tensor.
    pub fn scalar(n: usize, value: Expr) -> Self {
        Tensor {
            n,
            order: 0,
            comps: vec![value],
        }
    }

    /// Builds every component from its multi-index, in parallel.
    pub fn from_fn<F>(n: usize, order: usize, f: F) -> Self
    where
        F: Fn(&[usize]) -> Expr + Sync,
    {
        let len = n.pow(order as u32);
        let comps = (0..len)
            .into_par_iter()
            .map(|flat| f(&decode(flat, n, order)))
            .collect();
        Tensor { n, order, comps }
    }

    pub fn from_components(n: usize, order: usize, comps: Vec<Expr>) -> Self {
        assert_eq!(comps.len(), n.pow(order as u32), "component count");
        Tensor { n, order, comps }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order);
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Expr {
        &self.comps[self.flat(idx)]
    }

    pub fn index_of(&self, flat: usize) -> Index {
        decode(flat, self.n, self.order)
    }

    /// True iff every component is canonical zero.
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Expr::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.comps.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn map<F>(&self, f: F) -> Tensor
    where
        F: Fn(&Expr) -> Expr + Sync + Send,
    {
        Tensor {
            n: self.n,
            order: self.order,
            comps: self.comps.par_iter().map(f).collect(),
        }
    }

    fn zip<F>(&self, other: &Tensor, f: F) -> Tensor
    where
        F: Fn(&Expr, &Expr) -> Expr + Sync,
    {
        assert_eq!((self.n, self.order), (other.n, other.order), "shape mismatch");
        Tensor {
            n: self.n,
            order: self.order,
            comps: self
                .comps
                .par_iter()
                .zip(other.comps.par_iter())
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Expr) -> Tensor {
        if c.is_one() {
            return self.clone();
        }
        self.map(|x| c * x)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Expr, other: &Tensor) -> Tensor {
        self.zip(other, |a, b| if b.is_zero() { a.clone() } else { a + &(c * b) })
    }

    /// Σ coeff_i · tensor_i over tensors of one shape.
    pub fn combination(terms: &[(Expr, &Tensor)]) -> Tensor {
        let (_, first) = terms.first().expect("at least one term");
        let mut acc = Tensor::zeros(first.n, first.order);
        for (c, t) in terms {
            acc = acc.add_scaled(c, t);
        }
        acc
    }

    /// Tensor with index slots permuted: `out[idx] = self[idx ∘ perm]`,
    /// i.e. slot `j` of the result reads slot `perm[j]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.order);
        Tensor::from_fn(self.n, self.order, |idx| {
            let mut src: Index = SmallVec::from_elem(0, self.order);
            for (j, &p) in perm.iter().enumerate() {
                src[p] = idx[j];
            }
            self.get(&src).clone()
        })
    }

    /// `self ⊗ other`, indices of `self` first.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.n, other.n);
        let k = self.order;
        Tensor::from_fn(self.n, self.order + other.order, |idx| {
            let a = self.get(&idx[..k]);
            if a.is_zero() {
                return Expr::zero();
            }
            a * other.get(&idx[k..])
        })
    }

    /// Renders nonzero components as `name[i,j,..] = expr` lines, 1-based.
    pub fn describe(&self, name: &str, ctx: &Context) -> Vec<String> {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(flat, c)| {
                let idx: Vec<String> = decode(flat, self.n, self.order)
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect();
                format!("{name}[{}] = {}", idx.join(","), c.render(ctx))
            })
            .collect()
    }
}

/// Multi-index of a flat position.
pub fn decode(mut flat: usize, n: usize, order: usize) -> Index {
    let mut idx: Index = SmallVec::from_elem(0, order);
    for slot in (0..order).rev() {
        idx[slot] = flat % n;
        flat /= n;
    }
    idx
}

/// Components of a 1-form (or, where stated, a vector field).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm(pub Vec<Expr>);

impl OneForm {
    pub fn zero(n: usize) -> Self {
        OneForm(vec![Expr::zero(); n])
    }

    /// `value` in slot `i`, zero elsewhere.
    pub fn basis(n: usize, i: usize, value: Expr) -> Self {
        let mut v = vec![Expr::zero(); n];
        v[i] = value;
        OneForm(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Expr::is_zero)
    }

    pub fn as_tensor(&self) -> Tensor {
        Tensor::from_components(self.0.len(), 1, self.0.clone())
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Expr) -> OneForm {
        OneForm(self.0.iter().map(|a| c * a).collect())
    }

    pub fn render(&self, ctx: &Context) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| c.render(ctx)).collect();
        format!("({})", parts.join(", "))
    }
}

impl std::ops::Index<usize> for OneForm {
    type Output = Expr;
    fn index(&self, i: usize) -> &Expr {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_index_roundtrip() {
        let t = Tensor::zeros(3, 4);
        for flat in 0..t.len() {
            assert_eq!(t.flat(&t.index_of(flat)), flat);
        }
        assert_eq!(t.flat(&[0, 0, 1, 2]), 5);
    }

    #[test]
    fn permutation_moves_slots() {
        let t = Tensor::from_fn(2, 3, |i| Expr::int((i[0] * 100 + i[1] * 10 + i[2]) as i64));
        let p = t.permuted(&[2, 0, 1]);
        // p[a,b,c] = t[b,c,a]
        assert_eq!(p.get(&[1, 0, 0]), &Expr::int(1));
        assert_eq!(p.get(&[0, 1, 0]), &Expr::int(100));
    }

    #[test]
    fn outer_product_order() {
        let a = OneForm(vec![Expr::int(2), Expr::int(3)]).as_tensor();
        let b = OneForm(vec![Expr::int(5), Expr::int(7)]).as_tensor();
        assert_eq!(a.outer(&b).get(&[0, 1]), &Expr::int(14));
    }
}
