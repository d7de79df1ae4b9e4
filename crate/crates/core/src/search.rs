//! Budgeted generation of the algebra spanned by `1` under `+`, `−`, `×`
//! and Λ̃, and the obstruction checks built on it.
//!
//! Generation runs in two phases. The descent phase follows the support
//! dimension down: Λ̃ is applied to functions of even support dimension and
//! Ω̃ to those of odd support dimension, and each new layer is closed under
//! products with everything found so far. The breadth-first phase then
//! applies every operation to every pair, round by round, until the pool
//! stops growing or the function cap is hit.
//!
//! Functions are deduplicated by their exact value vector; the first term to
//! reach a value keeps it. Each batch of candidates is sorted by term order
//! before insertion, so the stream (and therefore every report) is the same
//! whether candidates are computed serially or in parallel.
//!
//! Arithmetic runs on one value per class of the coarsest partition that Λ
//! respects (see `Quotient`); functions are expanded to one value per simplex
//! only when they enter the pool.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::function::ConstructibleFunction;
use crate::link::{half_link, link_transform};
use crate::scalar::ExactScalar;
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_halflink_depth: usize,
    pub max_product_degree: usize,
    pub max_functions: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_halflink_depth: 3,
            max_product_degree: 4,
            max_functions: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("budget field {0} must be positive")]
    NonPositiveBudget(&'static str),
}

impl SearchBudget {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.max_halflink_depth == 0 {
            return Err(SearchError::NonPositiveBudget("max_halflink_depth"));
        }
        if self.max_product_degree == 0 {
            return Err(SearchError::NonPositiveBudget("max_product_degree"));
        }
        if self.max_functions == 0 {
            return Err(SearchError::NonPositiveBudget("max_functions"));
        }
        Ok(())
    }

    fn admits(&self, term: &Term) -> bool {
        term.halflink_depth() <= self.max_halflink_depth
            && term.product_degree() <= self.max_product_degree
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Keep searching after the first witness and count all of them.
    pub exhaustive: bool,
    /// Compute candidate batches on the rayon pool.
    pub parallel: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    Seed,
    Descent,
    BreadthFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BudgetUsed {
    /// Distinct functions generated.
    pub functions: usize,
    /// Generation stopped because `max_functions` was reached.
    pub truncated: bool,
    /// Generation stopped because no operation produced anything new.
    pub exhausted: bool,
    /// Breadth-first rounds completed.
    pub rounds: usize,
    /// Phase in which generation ended.
    pub phase: Phase,
    /// Depth and degree caps of the stage that produced the result.
    pub stage: (usize, usize),
    /// Stages run, see [`check_algebraic_set`].
    pub stages: usize,
}

/// A generated function and the first term that produced it.
#[derive(Debug, Clone)]
pub struct Generated<T> {
    pub term: Term,
    pub function: ConstructibleFunction<T>,
    pub support_dimension: Option<usize>,
}

/// All functions generated within a budget, in generation order.
#[derive(Debug, Clone)]
pub struct Enumeration<T> {
    pub items: Vec<Generated<T>>,
    pub used: BudgetUsed,
}

impl<T> IntoIterator for Enumeration<T> {
    type Item = Generated<T>;
    type IntoIter = std::vec::IntoIter<Generated<T>>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.into_iter()
    }
}

#[derive(Clone, Copy)]
enum Candidate {
    HalfLink(usize),
    Omega(usize),
    Mul(usize, usize),
    Add(usize, usize),
    Sub(usize, usize),
}

struct Stop;

/// The coarsest partition of the simplices on which Λ maps class-constant
/// functions to class-constant functions. Every generated function is
/// constant on these classes, so generation works with one value per class.
struct Quotient {
    class_of: Vec<usize>,
    /// Λ on class values: row `c` lists `(class, coefficient)`.
    link: Vec<Vec<(usize, i64)>>,
}

impl Quotient {
    fn new(complex: &SimplicialComplex) -> Self {
        let simplices = complex.simplices();
        let cofaces = complex.cofaces();
        // Signed coface count per class: the Λ row of simplex i.
        let row = |class_of: &[usize], i: usize| {
            let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
            if simplices[i].dim() % 2 == 1 {
                *counts.entry(class_of[i]).or_default() += 2;
            }
            for &j in &cofaces[i] {
                *counts.entry(class_of[j]).or_default() +=
                    if simplices[j].dim() % 2 == 1 { 1 } else { -1 };
            }
            counts.retain(|_, c| *c != 0);
            counts.into_iter().collect::<Vec<_>>()
        };
        let mut class_of = vec![0; simplices.len()];
        let mut classes = usize::from(!simplices.is_empty());
        loop {
            let mut ids: HashMap<(usize, Vec<(usize, i64)>), usize> = HashMap::new();
            let refined: Vec<usize> = (0..simplices.len())
                .map(|i| {
                    let next = ids.len();
                    *ids.entry((class_of[i], row(&class_of, i))).or_insert(next)
                })
                .collect();
            let stable = ids.len() == classes;
            classes = ids.len();
            class_of = refined;
            if stable {
                break;
            }
        }
        let mut link = vec![Vec::new(); classes];
        let mut filled = vec![false; classes];
        for i in 0..simplices.len() {
            let c = class_of[i];
            if !filled[c] {
                filled[c] = true;
                link[c] = row(&class_of, i);
            }
        }
        Quotient { class_of, link }
    }

    fn classes(&self) -> usize {
        self.link.len()
    }

    fn half_link<T: ExactScalar>(&self, v: &[T]) -> Vec<T> {
        self.link
            .iter()
            .map(|row| {
                row.iter()
                    .fold(T::zero(), |acc, (k, c)| acc + T::from_i64(*c) * &v[*k])
                    .half()
            })
            .collect()
    }

    fn expand<T: ExactScalar>(&self, v: &[T]) -> Vec<T> {
        self.class_of.iter().map(|&c| v[c].clone()).collect()
    }
}

fn zip_with<T: Clone>(a: &[T], b: &[T], op: impl Fn(T, &T) -> T) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| op(x.clone(), y)).collect()
}

fn values_of<T: ExactScalar>(q: &Quotient, values: &[Vec<T>], c: Candidate) -> Vec<T> {
    match c {
        Candidate::HalfLink(i) => q.half_link(&values[i]),
        Candidate::Omega(i) => zip_with(&values[i], &q.half_link(&values[i]), |x, y| x - y),
        Candidate::Mul(i, j) => zip_with(&values[i], &values[j], |x, y| x * y),
        Candidate::Add(i, j) => zip_with(&values[i], &values[j], |x, y| x + y),
        Candidate::Sub(i, j) => zip_with(&values[i], &values[j], |x, y| x - y),
    }
}

struct Engine<'a, T, P> {
    complex: Arc<SimplicialComplex>,
    quotient: Quotient,
    budget: SearchBudget,
    parallel: bool,
    pool: Vec<Generated<T>>,
    /// Per-class values of each pool function.
    values: Vec<Vec<T>>,
    seen: HashMap<Vec<T>, usize>,
    truncated: bool,
    rounds: usize,
    phase: Phase,
    // Returns true to end generation after the given item.
    visit: &'a mut P,
}

impl<'a, T, P> Engine<'a, T, P>
where
    T: ExactScalar,
    P: FnMut(&Generated<T>) -> bool,
{
    fn new(
        complex: Arc<SimplicialComplex>,
        budget: SearchBudget,
        parallel: bool,
        visit: &'a mut P,
    ) -> Self {
        Engine {
            quotient: Quotient::new(&complex),
            complex,
            budget,
            parallel,
            pool: Vec::new(),
            values: Vec::new(),
            seen: HashMap::new(),
            truncated: false,
            rounds: 0,
            phase: Phase::Seed,
            visit,
        }
    }

    fn term_of(&self, c: Candidate) -> Term {
        let t = |i: usize| self.pool[i].term.clone();
        match c {
            Candidate::HalfLink(i) => Term::half_link(t(i)),
            Candidate::Omega(i) => Term::omega(t(i)),
            Candidate::Mul(i, j) => Term::mul(t(i), t(j)),
            Candidate::Add(i, j) => Term::add(t(i), t(j)),
            Candidate::Sub(i, j) => Term::sub(t(i), t(j)),
        }
    }

    /// Depth and degree of the candidate's term, read off its operands.
    fn metrics(&self, c: Candidate) -> (usize, usize) {
        let m = |i: usize| {
            let t = &self.pool[i].term;
            (t.halflink_depth(), t.product_degree())
        };
        match c {
            Candidate::HalfLink(i) => (m(i).0 + 1, 1),
            Candidate::Omega(i) => (m(i).0 + 1, m(i).1.max(1)),
            Candidate::Mul(i, j) => (m(i).0.max(m(j).0), m(i).1 + m(j).1),
            Candidate::Add(i, j) | Candidate::Sub(i, j) => (m(i).0.max(m(j).0), m(i).1.max(m(j).1)),
        }
    }

    /// Evaluates the admissible candidates, drops values already in the pool,
    /// sorts the rest by term and inserts them. Returns the indices inserted.
    fn offer(&mut self, candidates: Vec<Candidate>) -> Result<Vec<usize>, Stop> {
        let admitted: Vec<Candidate> = candidates
            .into_iter()
            .filter(|&c| {
                let (depth, degree) = self.metrics(c);
                depth <= self.budget.max_halflink_depth && degree <= self.budget.max_product_degree
            })
            .collect();
        let (quotient, values, seen) = (&self.quotient, &self.values, &self.seen);
        let fresh = |c: Candidate| {
            let v = values_of(quotient, values, c);
            (!seen.contains_key(&v)).then_some((c, v))
        };
        let evaluated: Vec<(Candidate, Vec<T>)> = if self.parallel {
            admitted.into_par_iter().filter_map(fresh).collect()
        } else {
            admitted.into_iter().filter_map(fresh).collect()
        };
        let mut evaluated: Vec<(Term, Vec<T>)> = evaluated
            .into_iter()
            .map(|(c, v)| {
                let term = self.term_of(c);
                debug_assert!(self.budget.admits(&term));
                (term, v)
            })
            .collect();
        evaluated.sort_by(|a, b| a.0.cmp(&b.0));
        let mut inserted = Vec::new();
        for (term, v) in evaluated {
            self.insert(term, v, &mut inserted)?;
        }
        Ok(inserted)
    }

    fn insert(&mut self, term: Term, v: Vec<T>, inserted: &mut Vec<usize>) -> Result<(), Stop> {
        if self.seen.contains_key(&v) {
            return Ok(());
        }
        if self.pool.len() >= self.budget.max_functions {
            self.truncated = true;
            return Err(Stop);
        }
        let index = self.pool.len();
        let function =
            ConstructibleFunction::from_values(Arc::clone(&self.complex), self.quotient.expand(&v))
                .expect("one value per simplex");
        let support_dimension = function.support_dimension();
        self.seen.insert(v.clone(), index);
        self.values.push(v);
        self.pool.push(Generated {
            term,
            function,
            support_dimension,
        });
        inserted.push(index);
        if (self.visit)(&self.pool[index]) {
            return Err(Stop);
        }
        Ok(())
    }

    fn run(&mut self) -> bool {
        let exhausted = self.generate().is_ok();
        exhausted && !self.truncated
    }

    fn generate(&mut self) -> Result<(), Stop> {
        let one = vec![T::one(); self.quotient.classes()];
        self.insert(Term::one(), one, &mut Vec::new())?;
        self.phase = Phase::Descent;
        self.descend()?;
        self.phase = Phase::BreadthFirst;
        self.breadth_first()
    }

    fn descend(&mut self) -> Result<(), Stop> {
        let mut fresh = vec![0];
        while !fresh.is_empty() {
            let unary = fresh
                .iter()
                .filter_map(|&i| {
                    self.pool[i].support_dimension.map(|d| {
                        if d % 2 == 0 {
                            Candidate::HalfLink(i)
                        } else {
                            Candidate::Omega(i)
                        }
                    })
                })
                .collect();
            let mut layer = self.offer(unary)?;
            let mut found = layer.clone();
            for _ in 0..self.budget.max_product_degree {
                if layer.is_empty() {
                    break;
                }
                let products = layer
                    .iter()
                    .flat_map(|&i| (0..self.pool.len()).map(move |j| Candidate::Mul(i, j)))
                    .collect();
                layer = self.offer(products)?;
                found.extend(&layer);
            }
            fresh = found;
        }
        Ok(())
    }

    fn breadth_first(&mut self) -> Result<(), Stop> {
        let mut start = 0;
        loop {
            let end = self.pool.len();
            if start == end {
                return Ok(());
            }
            let unary = (start..end)
                .flat_map(|i| [Candidate::HalfLink(i), Candidate::Omega(i)])
                .collect();
            self.offer(unary)?;
            for j in start..end {
                let pairs = (0..=j)
                    .flat_map(|i| {
                        [
                            Candidate::Mul(i, j),
                            Candidate::Add(i, j),
                            Candidate::Sub(i, j),
                            Candidate::Sub(j, i),
                        ]
                    })
                    .collect();
                self.offer(pairs)?;
            }
            start = end;
            self.rounds += 1;
        }
    }

    fn used(&self, exhausted: bool) -> BudgetUsed {
        BudgetUsed {
            functions: self.pool.len(),
            truncated: self.truncated,
            exhausted,
            rounds: self.rounds,
            phase: self.phase,
            stage: (
                self.budget.max_halflink_depth,
                self.budget.max_product_degree,
            ),
            stages: 1,
        }
    }
}

/// Every function the budget reaches, in canonical generation order.
pub fn enumerate_algebra<T: ExactScalar>(
    complex: &Arc<SimplicialComplex>,
    budget: SearchBudget,
    options: SearchOptions,
) -> Result<Enumeration<T>, SearchError> {
    budget.validate()?;
    let mut never = |_: &Generated<T>| false;
    let mut engine = Engine::new(Arc::clone(complex), budget, options.parallel, &mut never);
    let exhausted = engine.run();
    let used = engine.used(exhausted);
    Ok(Enumeration {
        items: engine.pool,
        used,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PassWithinBudget,
    SetObstruction,
    LinkObstruction,
    SullivanViolation,
}

impl Verdict {
    pub fn is_obstruction(self) -> bool {
        self != Verdict::PassWithinBudget
    }
}

/// What the witness exhibits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Detail<T> {
    /// The witness takes a non-integer value on this simplex.
    NonIntegerValue { simplex: Vec<String>, value: T },
    /// The witness is integer-valued with odd Euler integral.
    OddIntegral { integral: T },
    /// The link of this simplex has odd Euler characteristic.
    OddLinkCharacteristic {
        simplex: Vec<String>,
        euler_characteristic: T,
    },
}

#[derive(Debug, Clone)]
pub struct ObstructionReport<T> {
    pub verdict: Verdict,
    pub witness: Option<Term>,
    pub witness_function: Option<ConstructibleFunction<T>>,
    pub detail: Option<Detail<T>>,
    pub budget: Option<SearchBudget>,
    pub budget_used: Option<BudgetUsed>,
    /// With an exhaustive search, how many generated functions obstruct.
    pub obstructions_found: usize,
}

impl<T: ExactScalar> ObstructionReport<T> {
    fn pass(budget: Option<SearchBudget>, used: Option<BudgetUsed>) -> Self {
        ObstructionReport {
            verdict: Verdict::PassWithinBudget,
            witness: None,
            witness_function: None,
            detail: None,
            budget,
            budget_used: used,
            obstructions_found: 0,
        }
    }

    /// Re-evaluates the witness on a fresh copy of `complex` and checks that
    /// it reproduces the reported detail exactly.
    pub fn verify(&self, complex: &SimplicialComplex) -> bool {
        let (Some(term), Some(detail)) = (&self.witness, &self.detail) else {
            return self.witness.is_none()
                && self.detail.is_none()
                && !self.verdict.is_obstruction();
        };
        let fresh = Arc::new(complex.clone());
        let f: ConstructibleFunction<T> = term.evaluate(&fresh);
        match detail {
            Detail::NonIntegerValue { simplex, value } => {
                fresh.simplices().iter().zip(f.values()).any(|(s, v)| {
                    fresh.simplex_names(s) == *simplex && v == value && !v.is_integer()
                })
            }
            Detail::OddIntegral { integral } => {
                f.is_integer_valued()
                    && f.euler_integral() == *integral
                    && integral
                        .to_integer()
                        .is_some_and(|n| num_integer::Integer::is_odd(&n))
            }
            Detail::OddLinkCharacteristic {
                simplex,
                euler_characteristic,
            } => {
                let lambda = link_transform(&Term::one().evaluate::<T>(&fresh));
                fresh
                    .simplices()
                    .iter()
                    .zip(lambda.values())
                    .any(|(s, v)| fresh.simplex_names(s) == *simplex && v == euler_characteristic)
                    && f.values().iter().any(|v| !v.is_integer())
            }
        }
    }
}

fn non_integer_detail<T: ExactScalar>(g: &Generated<T>) -> Option<Detail<T>> {
    g.function
        .first_non_integer()
        .map(|(i, v)| Detail::NonIntegerValue {
            simplex: g
                .function
                .complex()
                .simplex_names(&g.function.complex().simplices()[i]),
            value: v.clone(),
        })
}

fn odd_integral_detail<T: ExactScalar>(g: &Generated<T>) -> Option<Detail<T>> {
    let integral = g.function.integer_integral()?;
    num_integer::Integer::is_odd(&integral).then(|| Detail::OddIntegral {
        integral: g.function.euler_integral(),
    })
}

/// The (depth, degree) caps a check runs through: the requested pair first,
/// then every smaller pair in ascending order. Each stage is an independent
/// generation run under the shared function cap, so enlarging any budget
/// component only adds stages or lengthens them, and an obstruction found
/// under a smaller budget is always found again.
fn stages(budget: SearchBudget) -> Vec<SearchBudget> {
    let mut out = vec![budget];
    for depth in 1..=budget.max_halflink_depth {
        for degree in 1..=budget.max_product_degree {
            let stage = SearchBudget {
                max_halflink_depth: depth,
                max_product_degree: degree,
                max_functions: budget.max_functions,
            };
            if stage != budget {
                out.push(stage);
            }
        }
    }
    out
}

fn search<T: ExactScalar>(
    complex: &Arc<SimplicialComplex>,
    budget: SearchBudget,
    options: SearchOptions,
    verdict: Verdict,
    obstructs: impl Fn(&Generated<T>) -> Option<Detail<T>>,
) -> Result<ObstructionReport<T>, SearchError> {
    budget.validate()?;
    let mut main_used = None;
    for (n, stage) in stages(budget).into_iter().enumerate() {
        let mut first: Option<(Term, ConstructibleFunction<T>, Detail<T>)> = None;
        let mut count = 0;
        let mut visit = |g: &Generated<T>| {
            if let Some(detail) = obstructs(g) {
                count += 1;
                if first.is_none() {
                    first = Some((g.term.clone(), g.function.clone(), detail));
                }
                !options.exhaustive
            } else {
                false
            }
        };
        let mut engine = Engine::new(Arc::clone(complex), stage, options.parallel, &mut visit);
        let exhausted = engine.run();
        let mut used = engine.used(exhausted);
        used.stages = n + 1;
        drop(engine);
        if let Some((term, function, detail)) = first {
            return Ok(ObstructionReport {
                verdict,
                witness: Some(term),
                witness_function: Some(function),
                detail: Some(detail),
                budget: Some(budget),
                budget_used: Some(used),
                obstructions_found: count,
            });
        }
        main_used.get_or_insert(used).stages = n + 1;
    }
    Ok(ObstructionReport::pass(Some(budget), main_used))
}

/// Looks for a generated function with a non-integer value. Such a function
/// shows the space is not homeomorphic to a real algebraic set.
///
/// The full budget is searched first. If it yields nothing, every smaller
/// (depth, degree) pair is searched in turn under the same function cap,
/// because a larger budget can fill the cap with functions a smaller one never
/// reaches. Pass reports carry the usage of the full-budget stage.
pub fn check_algebraic_set<T: ExactScalar>(
    complex: &Arc<SimplicialComplex>,
    budget: SearchBudget,
    options: SearchOptions,
) -> Result<ObstructionReport<T>, SearchError> {
    search(
        complex,
        budget,
        options,
        Verdict::SetObstruction,
        non_integer_detail,
    )
}

/// Looks for a generated function that is non-integer somewhere or is
/// integer-valued with odd Euler integral. Either shows the space is not
/// homeomorphic to the link of a point in a real algebraic set.
pub fn check_algebraic_link<T: ExactScalar>(
    complex: &Arc<SimplicialComplex>,
    budget: SearchBudget,
    options: SearchOptions,
) -> Result<ObstructionReport<T>, SearchError> {
    search(complex, budget, options, Verdict::LinkObstruction, |g| {
        non_integer_detail(g).or_else(|| odd_integral_detail(g))
    })
}

/// Sullivan's condition: every link has even Euler characteristic. Reports
/// the first simplex (canonical order) where Λ1 is odd; the witness is Λ̃1.
pub fn sullivan_check<T: ExactScalar>(complex: &Arc<SimplicialComplex>) -> ObstructionReport<T> {
    let one = ConstructibleFunction::<T>::indicator(Arc::clone(complex));
    let lambda = link_transform(&one);
    let odd = lambda
        .values()
        .iter()
        .enumerate()
        .find(|(_, v)| !v.half().is_integer());
    match odd {
        None => ObstructionReport::pass(None, None),
        Some((i, v)) => {
            let witness = Term::half_link(Term::one());
            ObstructionReport {
                verdict: Verdict::SullivanViolation,
                witness_function: Some(half_link(&one)),
                witness: Some(witness),
                detail: Some(Detail::OddLinkCharacteristic {
                    simplex: complex.simplex_names(&complex.simplices()[i]),
                    euler_characteristic: v.clone(),
                }),
                budget: None,
                budget_used: None,
                obstructions_found: lambda
                    .values()
                    .iter()
                    .filter(|v| !v.half().is_integer())
                    .count(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;
    use crate::spaces;

    #[test]
    fn circle_is_a_single_class() {
        let q = Quotient::new(&spaces::circle().complex);
        assert_eq!(q.classes(), 1);
        assert_eq!(q.link, vec![vec![(0, 2)]]);
    }

    #[test]
    fn quotient_link_matches_full_link() {
        for fx in spaces::all() {
            let q = Quotient::new(&fx.complex);
            for seed in 0..4i64 {
                let v: Vec<Dyadic> = (0..q.classes() as i64)
                    .map(|c| Dyadic::from((c * 7 + seed * 3) % 5 - 2))
                    .collect();
                let full =
                    ConstructibleFunction::from_values(fx.complex.clone(), q.expand(&v)).unwrap();
                assert_eq!(
                    q.expand(&q.half_link(&v)),
                    half_link(&full).into_values(),
                    "{}",
                    fx.name
                );
            }
        }
    }

    #[test]
    fn labels_lie_inside_classes() {
        for fx in spaces::all() {
            let q = Quotient::new(&fx.complex);
            let mut class_of_label: HashMap<&str, usize> = HashMap::new();
            for (i, &c) in q.class_of.iter().enumerate() {
                let label = fx.labeling.label_at(i);
                assert_eq!(*class_of_label.entry(label).or_insert(c), c, "{}", fx.name);
            }
        }
    }
}
