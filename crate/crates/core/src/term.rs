//! Expression trees over `1`, `+`, `−`, `×` and Λ̃.
//!
//! Terms are immutable and shared (`Arc`), carry cached size, Λ̃-depth,
//! product degree and hash, and are built only through smart constructors
//! that keep commutative operands sorted. Ω̃ and powers are sugar:
//! `omega(t) = t − Λ̃t`, `pow(t, n) = t × pow(t, n − 1)`.
//!
//! Terms are totally ordered by node count, then structurally.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::complex::SimplicialComplex;
use crate::function::ConstructibleFunction;
use crate::link::half_link;
use crate::scalar::Scalar;

#[derive(Debug, PartialEq, Eq)]
pub enum TermOp {
    One,
    Add(Term, Term),
    Sub(Term, Term),
    Mul(Term, Term),
    HalfLink(Term),
}

impl TermOp {
    fn tag(&self) -> u8 {
        match self {
            TermOp::One => 0,
            TermOp::Add(..) => 1,
            TermOp::Sub(..) => 2,
            TermOp::Mul(..) => 3,
            TermOp::HalfLink(..) => 4,
        }
    }
}

#[derive(Debug)]
struct Node {
    op: TermOp,
    size: usize,
    depth: usize,
    degree: usize,
    hash: u64,
}

#[derive(Clone)]
pub struct Term(Arc<Node>);

impl Term {
    fn make(op: TermOp) -> Term {
        let (size, depth, degree) = match &op {
            TermOp::One => (1, 0, 0),
            TermOp::Add(a, b) | TermOp::Sub(a, b) => (
                1 + a.size() + b.size(),
                a.halflink_depth().max(b.halflink_depth()),
                a.product_degree().max(b.product_degree()),
            ),
            TermOp::Mul(a, b) => (
                1 + a.size() + b.size(),
                a.halflink_depth().max(b.halflink_depth()),
                a.product_degree() + b.product_degree(),
            ),
            TermOp::HalfLink(a) => (1 + a.size(), 1 + a.halflink_depth(), 1),
        };
        let mut h = DefaultHasher::new();
        op.tag().hash(&mut h);
        match &op {
            TermOp::One => {}
            TermOp::Add(a, b) | TermOp::Sub(a, b) | TermOp::Mul(a, b) => {
                a.0.hash.hash(&mut h);
                b.0.hash.hash(&mut h);
            }
            TermOp::HalfLink(a) => a.0.hash.hash(&mut h),
        }
        Term(Arc::new(Node {
            op,
            size,
            depth,
            degree,
            hash: h.finish(),
        }))
    }

    pub fn one() -> Term {
        Term::make(TermOp::One)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Term {
        let (a, b) = if b < a { (b, a) } else { (a, b) };
        Term::make(TermOp::Add(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Term, b: Term) -> Term {
        Term::make(TermOp::Sub(a, b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        let (a, b) = if b < a { (b, a) } else { (a, b) };
        Term::make(TermOp::Mul(a, b))
    }

    pub fn half_link(a: Term) -> Term {
        Term::make(TermOp::HalfLink(a))
    }

    /// Ω̃t = t − Λ̃t.
    pub fn omega(a: Term) -> Term {
        Term::sub(a.clone(), Term::half_link(a))
    }

    /// `t^n` for `n ≥ 1`, expanded as `t × t^(n−1)`.
    pub fn pow(t: Term, n: u32) -> Term {
        assert!(n >= 1, "exponent must be positive");
        let mut acc = t.clone();
        for _ in 1..n {
            acc = Term::mul(t.clone(), acc);
        }
        acc
    }

    /// The constant function `n`, built from `1` by doubling; `0` is `1 − 1`.
    pub fn integer(n: u64) -> Term {
        if n == 0 {
            return Term::sub(Term::one(), Term::one());
        }
        let mut result: Option<Term> = None;
        let mut power = Term::one();
        let mut rest = n;
        loop {
            if rest & 1 == 1 {
                result = Some(match result {
                    None => power.clone(),
                    Some(r) => Term::add(r, power.clone()),
                });
            }
            rest >>= 1;
            if rest == 0 {
                break;
            }
            power = Term::add(power.clone(), power);
        }
        result.expect("n > 0")
    }

    pub fn op(&self) -> &TermOp {
        &self.0.op
    }

    /// Node count.
    pub fn size(&self) -> usize {
        self.0.size
    }

    /// Maximum nesting of Λ̃.
    pub fn halflink_depth(&self) -> usize {
        self.0.depth
    }

    /// Number of Λ̃-generated factors in the largest product; constants have
    /// degree 0 and every Λ̃-subterm counts as a single factor.
    pub fn product_degree(&self) -> usize {
        self.0.degree
    }

    /// If `self` has the shape produced by [`Term::pow`], its base and exponent.
    pub fn as_power(&self) -> Option<(&Term, u32)> {
        match self.op() {
            TermOp::Mul(a, b) if a == b => Some((a, 2)),
            TermOp::Mul(a, b) => match b.as_power() {
                Some((base, n)) if base == a => Some((a, n + 1)),
                _ => None,
            },
            _ => None,
        }
    }

    /// If `self` is `t − Λ̃t`, returns `t`.
    pub fn as_omega(&self) -> Option<&Term> {
        match self.op() {
            TermOp::Sub(a, b) => match b.op() {
                TermOp::HalfLink(inner) if inner == a => Some(a),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn evaluate<T: Scalar>(
        &self,
        complex: &Arc<SimplicialComplex>,
    ) -> ConstructibleFunction<T> {
        let mut memo = HashMap::new();
        self.evaluate_memo(complex, &mut memo)
    }

    fn evaluate_memo<T: Scalar>(
        &self,
        complex: &Arc<SimplicialComplex>,
        memo: &mut HashMap<Term, ConstructibleFunction<T>>,
    ) -> ConstructibleFunction<T> {
        if let Some(f) = memo.get(self) {
            return f.clone();
        }
        let f = match self.op() {
            TermOp::One => ConstructibleFunction::indicator(Arc::clone(complex)),
            TermOp::Add(a, b) => {
                let (fa, fb) = (
                    a.evaluate_memo(complex, memo),
                    b.evaluate_memo(complex, memo),
                );
                fa.add(&fb).expect("same complex")
            }
            TermOp::Sub(a, b) => {
                let (fa, fb) = (
                    a.evaluate_memo(complex, memo),
                    b.evaluate_memo(complex, memo),
                );
                fa.sub(&fb).expect("same complex")
            }
            TermOp::Mul(a, b) => {
                let (fa, fb) = (
                    a.evaluate_memo(complex, memo),
                    b.evaluate_memo(complex, memo),
                );
                fa.mul(&fb).expect("same complex")
            }
            TermOp::HalfLink(a) => half_link(&a.evaluate_memo(complex, memo)),
        };
        memo.insert(self.clone(), f.clone());
        f
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.size == other.0.size
                && self.0.op == other.0.op)
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state);
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.size()
            .cmp(&other.size())
            .then_with(|| self.op().tag().cmp(&other.op().tag()))
            .then_with(|| match (self.op(), other.op()) {
                (TermOp::Add(a, b), TermOp::Add(c, d))
                | (TermOp::Sub(a, b), TermOp::Sub(c, d))
                | (TermOp::Mul(a, b), TermOp::Mul(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
                (TermOp::HalfLink(a), TermOp::HalfLink(c)) => a.cmp(c),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Ctx {
    Sum,
    SumRight,
    Product,
    ProductRight,
    Factor,
}

impl Term {
    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: Ctx) -> fmt::Result {
        if let Some(inner) = self.as_omega() {
            write!(f, "W(")?;
            inner.write(f, Ctx::Sum)?;
            return write!(f, ")");
        }
        if let Some((base, n)) = self.as_power() {
            let paren = ctx == Ctx::Factor;
            if paren {
                write!(f, "(")?;
            }
            base.write(f, Ctx::Factor)?;
            write!(f, "^{n}")?;
            if paren {
                write!(f, ")")?;
            }
            return Ok(());
        }
        match self.op() {
            TermOp::One => write!(f, "1"),
            TermOp::HalfLink(a) => {
                write!(f, "L(")?;
                a.write(f, Ctx::Sum)?;
                write!(f, ")")
            }
            TermOp::Add(a, b) | TermOp::Sub(a, b) => {
                let paren = ctx > Ctx::Sum;
                if paren {
                    write!(f, "(")?;
                }
                a.write(f, Ctx::Sum)?;
                let sym = if matches!(self.op(), TermOp::Add(..)) {
                    '+'
                } else {
                    '-'
                };
                write!(f, " {sym} ")?;
                b.write(f, Ctx::SumRight)?;
                if paren {
                    write!(f, ")")?;
                }
                Ok(())
            }
            TermOp::Mul(a, b) => {
                let paren = ctx > Ctx::Product;
                if paren {
                    write!(f, "(")?;
                }
                a.write(f, Ctx::Product)?;
                write!(f, "*")?;
                b.write(f, Ctx::ProductRight)?;
                if paren {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, Ctx::Sum)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.op() {
            TermOp::One => write!(f, "One"),
            TermOp::Add(a, b) => write!(f, "Add({a:?}, {b:?})"),
            TermOp::Sub(a, b) => write!(f, "Sub({a:?}, {b:?})"),
            TermOp::Mul(a, b) => write!(f, "Mul({a:?}, {b:?})"),
            TermOp::HalfLink(a) => write!(f, "HalfLink({a:?})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;

    fn phi() -> Term {
        Term::half_link(Term::one())
    }

    #[test]
    fn commutative_operands_are_sorted() {
        let a = Term::mul(phi(), Term::one());
        let b = Term::mul(Term::one(), phi());
        assert_eq!(a, b);
        assert_eq!(format!("{a:?}"), "Mul(One, HalfLink(One))");
        assert_ne!(Term::sub(phi(), Term::one()), Term::sub(Term::one(), phi()));
    }

    #[test]
    fn metrics_of_the_odd_integral_witness() {
        let psi = Term::mul(phi(), Term::omega(Term::pow(phi(), 2)));
        assert_eq!(psi.halflink_depth(), 2);
        assert_eq!(psi.product_degree(), 3);
        assert_eq!(psi.to_string(), "L(1)*W(L(1)^2)");
    }

    #[test]
    fn powers_are_expanded_and_resugared() {
        let cube = Term::pow(phi(), 3);
        assert_eq!(
            format!("{cube:?}"),
            "Mul(HalfLink(One), Mul(HalfLink(One), HalfLink(One)))"
        );
        assert_eq!(cube.as_power().map(|(_, n)| n), Some(3));
        let nested = Term::mul(Term::pow(phi(), 2), Term::pow(phi(), 2));
        assert_eq!(nested.as_power(), Some((&Term::pow(phi(), 2), 2)));
        assert_eq!(nested.to_string(), "(L(1)^2)^2");
        let mixed = Term::mul(phi(), Term::pow(Term::one(), 2));
        assert_eq!(mixed.as_power(), None);
    }

    #[test]
    fn integers_by_doubling() {
        assert_eq!(Term::integer(1), Term::one());
        assert_eq!(Term::integer(2).to_string(), "1 + 1");
        assert_eq!(Term::integer(0).to_string(), "1 - 1");
        let point = Arc::new(SimplicialComplex::build([vec![0]]).unwrap());
        let f = Term::integer(1000).evaluate::<Dyadic>(&point);
        assert_eq!(f.values(), &[Dyadic::from(1000)]);
    }

    #[test]
    fn order_is_size_first() {
        let mut terms = [
            Term::pow(phi(), 2),
            phi(),
            Term::one(),
            Term::omega(Term::one()),
        ];
        terms.sort();
        let shown: Vec<String> = terms.iter().map(Term::to_string).collect();
        assert_eq!(shown, ["1", "L(1)", "W(1)", "L(1)^2"]);
    }
}
