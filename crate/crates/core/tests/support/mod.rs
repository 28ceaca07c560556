//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use quadtile::exactfield::{int, rat, FieldContext};
use quadtile::{classify, decide, plan, Classification, Quad, Rational, Recipe, ShapeSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Non-square radicands, including two that are not integers.
pub fn radicands() -> Vec<Rational> {
    let mut out: Vec<Rational> = [2, 3, 5, 6, 7, 10, 11, 13].iter().map(|&n| int(n)).collect();
    out.push(rat(3, 2));
    out.push(rat(5, 7));
    out
}

pub fn field(rng: &mut impl Rng) -> Arc<FieldContext> {
    let p = radicands().choose(rng).expect("nonempty pool").clone();
    FieldContext::new(p).expect("pool is non-square")
}

pub fn small_rat(rng: &mut impl Rng, num: i64, den: i64) -> Rational {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn quad(rng: &mut impl Rng, c: &Arc<FieldContext>, num: i64, den: i64) -> Quad {
    Quad::new(c, small_rat(rng, num, den), small_rat(rng, num, den))
}

pub fn positive(rng: &mut impl Rng, c: &Arc<FieldContext>, num: i64, den: i64) -> Quad {
    loop {
        let q = quad(rng, c, num, den);
        if q.is_positive() {
            return q;
        }
    }
}

/// A positive shape whose conjugate has sign `conj_sign`; 0 asks for a
/// rational shape.
pub fn shape_with_conj(rng: &mut impl Rng, c: &Arc<FieldContext>, conj_sign: i8) -> Quad {
    if conj_sign == 0 {
        return Quad::from_rational(c, rat(rng.gen_range(1..=6), rng.gen_range(1..=4)));
    }
    loop {
        let x = positive(rng, c, 6, 3);
        if !x.f().is_zero() && x.conj().sign() == conj_sign {
            return x;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    Mixed,
    Positive,
    Negative,
}

pub const CASES: [Case; 3] = [Case::Mixed, Case::Positive, Case::Negative];

pub fn shapes_for(rng: &mut impl Rng, c: &Arc<FieldContext>, case: Case, n: usize) -> Vec<Quad> {
    let mut shapes: Vec<Quad> = (0..n)
        .map(|_| {
            let sign = match case {
                Case::Mixed => if rng.gen() { 1 } else { -1 },
                Case::Positive => if rng.gen_ratio(1, 5) { 0 } else { 1 },
                Case::Negative => -1,
            };
            shape_with_conj(rng, c, sign)
        })
        .collect();
    if case == Case::Mixed {
        // force both conjugate signs to appear
        let n = shapes.len();
        shapes[0] = shape_with_conj(rng, c, 1);
        shapes[n - 1] = shape_with_conj(rng, c, -1);
        shapes.shuffle(rng);
    }
    shapes
}

/// A target inside the admissible set of `shapes` (any positive value for
/// the mixed case), hitting the boundary rays now and then.
pub fn admissible_target(rng: &mut impl Rng, spec_shapes: &[Quad], c: &Arc<FieldContext>) -> Quad {
    let probe = ShapeSpec::new(c, spec_shapes.to_vec(), Quad::one(c)).expect("valid shapes");
    let t = match rng.gen_range(0..6) {
        0 => int(1),
        1 => int(-1),
        2 => int(0),
        _ => small_rat(rng, 4, 4) / int(4),
    };
    match classify(&probe).expect("valid shapes") {
        Classification::Mixed { .. } => positive(rng, c, 6, 4),
        Classification::AllPositiveConj { bound, .. } => {
            let e = rat(rng.gen_range(1..=6), rng.gen_range(1..=4));
            let f = &e * &bound * t;
            Quad::new(c, e, f)
        }
        Classification::AllNegativeConj { bound, .. } => {
            let f = rat(rng.gen_range(1..=6), rng.gen_range(1..=4));
            let e = &f * &bound * t;
            Quad::new(c, e, f)
        }
    }
}

/// A YES instance of the requested case with its plan; plans above
/// `max_tiles` tiles are rejected and redrawn.
pub fn yes_instance(rng: &mut impl Rng, case: Case, max_tiles: u64) -> (ShapeSpec, Recipe) {
    loop {
        let c = field(rng);
        let n = rng.gen_range(1..=3).max(if case == Case::Mixed { 2 } else { 1 });
        let shapes = shapes_for(rng, &c, case, n);
        let z = admissible_target(rng, &shapes, &c);
        let spec = ShapeSpec::new(&c, shapes, z).expect("valid instance");
        assert!(decide(&spec).unwrap().is_yes(), "generator produced a NO instance: {spec:?}");
        let recipe = plan(&spec).expect("YES instances have a plan");
        if recipe.tile_count() <= BigUint::from(max_tiles) {
            return (spec, recipe);
        }
    }
}

/// Which boundary situation a NO instance should exercise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoKind {
    /// Conjugate positive, target outside the cone with e > 0.
    PositiveOutside,
    /// Conjugate positive, e ≤ 0.
    PositiveNonPositiveE,
    /// Conjugate negative, target outside the cone with f > 0.
    NegativeOutside,
    /// Conjugate negative, f ≤ 0.
    NegativeNonPositiveF,
    /// Rational shape, irrational target.
    RationalShape,
}

pub const NO_KINDS: [NoKind; 5] = [
    NoKind::PositiveOutside,
    NoKind::PositiveNonPositiveE,
    NoKind::NegativeOutside,
    NoKind::NegativeNonPositiveF,
    NoKind::RationalShape,
];

/// A single-shape NO instance `(z, x)` of the requested kind.
pub fn no_instance(rng: &mut impl Rng, kind: NoKind) -> (Quad, Quad) {
    loop {
        let c = field(rng);
        let x = match kind {
            NoKind::PositiveOutside | NoKind::PositiveNonPositiveE => shape_with_conj(rng, &c, 1),
            NoKind::NegativeOutside | NoKind::NegativeNonPositiveF => shape_with_conj(rng, &c, -1),
            NoKind::RationalShape => shape_with_conj(rng, &c, 0),
        };
        let z = positive(rng, &c, 8, 4);
        let fits = match kind {
            NoKind::PositiveOutside | NoKind::NegativeOutside => z.e().is_positive() && z.f().is_positive(),
            NoKind::PositiveNonPositiveE => !z.e().is_positive(),
            NoKind::NegativeNonPositiveF => !z.f().is_positive(),
            NoKind::RationalShape => !z.f().is_zero(),
        };
        if !fits {
            continue;
        }
        let spec = ShapeSpec::new(&c, vec![x.clone()], z.clone()).expect("valid instance");
        if !decide(&spec).unwrap().is_yes() {
            return (z, x);
        }
    }
}

/// A NO instance with `n` shapes that all share one conjugate sign. The
/// other shapes must be tileable by the extremal one; instances whose
/// reduction tilings would exceed `max_tiles` are redrawn.
pub fn no_instance_multi(rng: &mut impl Rng, n: usize, max_tiles: u64) -> ShapeSpec {
    'draw: loop {
        let c = field(rng);
        let sign = if rng.gen() { 1 } else { -1 };
        let shapes: Vec<Quad> = (0..n).map(|_| shape_with_conj(rng, &c, sign)).collect();
        let z = positive(rng, &c, 8, 4);
        let spec = ShapeSpec::new(&c, shapes, z).expect("valid instance");
        let decision = decide(&spec).unwrap();
        if decision.is_yes() {
            continue;
        }
        let k = decision.classification.extremal().expect("one conjugate sign");
        let xk = &spec.shapes()[k];
        for xi in spec.shapes() {
            let sub = ShapeSpec::new(&c, vec![xk.clone()], xi.clone()).expect("valid");
            let recipe = plan(&sub).expect("every shape is tileable by the extremal one");
            if recipe.tile_count() > BigUint::from(max_tiles) {
                continue 'draw;
            }
        }
        return spec;
    }
}
