//! Brute-force forward closure of the shape list under sum, reciprocal and
//! small rational scaling. Every value it reaches is tileable (stack two
//! tilings, turn one on its side, or lay out a grid of copies), so a witness
//! proves YES. Not finding one proves nothing. It exists as an oracle for
//! tests and shares no code with the decision procedure.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::exactfield::{format_rational, rat, Quad, Rational};

/// Rational factors tried by the scaling step.
pub const SCALE_POOL: [(i64, i64); 4] = [(1, 2), (2, 1), (1, 3), (3, 1)];

/// Values whose components need more bits than this are discarded.
const MAX_HEIGHT_BITS: u64 = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Shape(usize),
    Sum(Box<Witness>, Box<Witness>),
    Reciprocal(Box<Witness>),
    Scale(Rational, Box<Witness>),
}

impl Witness {
    /// Evaluates the expression over `shapes`.
    pub fn eval(&self, shapes: &[Quad]) -> Quad {
        match self {
            Witness::Shape(i) => shapes[*i].clone(),
            Witness::Sum(l, r) => l.eval(shapes) + r.eval(shapes),
            Witness::Reciprocal(w) => w.eval(shapes).inv().expect("positive value"),
            Witness::Scale(q, w) => w.eval(shapes).scale(q),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Witness::Shape(_) => 0,
            Witness::Sum(l, r) => 1 + l.depth().max(r.depth()),
            Witness::Reciprocal(w) | Witness::Scale(_, w) => 1 + w.depth(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Shape(i) => write!(f, "x{i}"),
            Witness::Sum(l, r) => write!(f, "({l} + {r})"),
            Witness::Reciprocal(w) => write!(f, "inv({w})"),
            Witness::Scale(q, w) => write!(f, "{}·{w}", format_rational(q)),
        }
    }
}

fn height_bits(u: &Quad) -> u64 {
    [u.e(), u.f()]
        .iter()
        .flat_map(|r| [r.numer().bits(), r.denom().bits()])
        .max()
        .unwrap_or(0)
}

/// Runs `depth` rounds of closure starting from `shapes`, admitting at most
/// `width` new values per round (smallest component height first, ties in
/// generation order). Returns an expression for `z` if it is ever produced.
pub fn bounded_closure_search(
    z: &Quad,
    shapes: &[Quad],
    depth: usize,
    width: usize,
) -> Option<Witness> {
    let pool: Vec<Rational> = SCALE_POOL.iter().map(|&(n, d)| rat(n, d)).collect();
    let mut known: Vec<(Quad, Witness)> = Vec::new();
    let mut index: HashMap<Quad, usize> = HashMap::new();
    for (i, x) in shapes.iter().enumerate() {
        if !x.same_field(z) {
            return None;
        }
        if !index.contains_key(x) {
            index.insert(x.clone(), known.len());
            known.push((x.clone(), Witness::Shape(i)));
        }
    }
    if let Some(&i) = index.get(z) {
        return Some(known[i].1.clone());
    }

    for _ in 0..depth {
        let mut fresh: Vec<(Quad, Witness)> = Vec::new();
        let mut seen: HashSet<Quad> = HashSet::new();
        let mut offer = |value: Quad, make: &dyn Fn() -> Witness| -> Option<Witness> {
            if index.contains_key(&value) || seen.contains(&value) {
                return None;
            }
            if value == *z {
                return Some(make());
            }
            if height_bits(&value) > MAX_HEIGHT_BITS {
                return None;
            }
            seen.insert(value.clone());
            fresh.push((value, make()));
            None
        };
        for (u, wu) in &known {
            let inv = u.inv().expect("positive value");
            if let Some(w) = offer(inv, &|| Witness::Reciprocal(Box::new(wu.clone()))) {
                return Some(w);
            }
            for q in &pool {
                if let Some(w) = offer(u.scale(q), &|| Witness::Scale(q.clone(), Box::new(wu.clone()))) {
                    return Some(w);
                }
            }
        }
        for (a, (u, wu)) in known.iter().enumerate() {
            for (v, wv) in &known[a..] {
                let sum = u + v;
                if let Some(w) = offer(sum, &|| Witness::Sum(Box::new(wu.clone()), Box::new(wv.clone()))) {
                    return Some(w);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        fresh.sort_by_key(|(value, _)| height_bits(value));
        for (value, witness) in fresh.into_iter().take(width) {
            index.insert(value.clone(), known.len());
            known.push((value, witness));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{int, FieldContext};

    #[test]
    fn doubling() {
        let c = FieldContext::new(int(2)).unwrap();
        let x = [Quad::from_ints(&c, 1, 1)];
        let z = Quad::from_ints(&c, 2, 2);
        let w = bounded_closure_search(&z, &x, 3, 16).expect("witness");
        assert_eq!(w.eval(&x), z);
    }

    #[test]
    fn root_two_from_silver_ratio() {
        let c = FieldContext::new(int(2)).unwrap();
        let x = [Quad::from_ints(&c, 1, 1)];
        let z = Quad::from_ints(&c, 0, 1);
        let w = bounded_closure_search(&z, &x, 4, 16).expect("witness");
        assert_eq!(w.eval(&x), z);
        assert!(w.depth() <= 4);
    }

    #[test]
    fn square_is_never_reached() {
        let c = FieldContext::new(int(2)).unwrap();
        let x = [Quad::from_ints(&c, 1, 1)];
        assert_eq!(bounded_closure_search(&Quad::one(&c), &x, 4, 32), None);
    }

    #[test]
    fn target_among_shapes() {
        let c = FieldContext::new(int(2)).unwrap();
        let x = [Quad::from_ints(&c, 1, 1), Quad::from_ints(&c, 3, 1)];
        assert_eq!(
            bounded_closure_search(&x[1], &x, 0, 0),
            Some(Witness::Shape(1))
        );
    }
}
