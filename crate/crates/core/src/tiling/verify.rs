use std::collections::BTreeMap;
use std::fmt;

use super::{guillotine, Tiling, TilingError};
use crate::exactfield::{Filtered, Frac, FracSum, Quad};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub tiles: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.tiles.iter().map(|i| i.to_string()).collect();
        write!(f, "tiles [{}]: {}", ids.join(", "), self.reason)
    }
}

/// Outcome of checking a tiling. `covered ∧ disjoint ∧ contained` holds
/// exactly when the tiles dissect the bounds. `ratios_ok` is `None` until
/// the tiles have been checked against a shape list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub covered: bool,
    pub disjoint: bool,
    pub contained: bool,
    pub ratios_ok: Option<bool>,
    pub guillotine: bool,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn is_dissection(&self) -> bool {
        self.covered && self.disjoint && self.contained
    }

    /// Dissection with every tile of an allowed ratio.
    pub fn is_valid(&self) -> bool {
        self.is_dissection() && self.ratios_ok == Some(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub ok: bool,
    pub failures: Vec<Failure>,
}

/// Containment, pairwise interior disjointness and exact area balance, each
/// reported on its own. The guillotine flag is computed only for exact
/// dissections.
pub fn verify_exact_cover(t: &Tiling) -> Result<VerifyReport, TilingError> {
    // Tiling::new already enforced a single field; this guards values that
    // were assembled internally.
    for tile in &t.tiles {
        tile.check_field(t.ctx())?;
    }
    let mut failures = Vec::new();
    let zero = Quad::zero(t.ctx());

    let mut contained = true;
    for (i, tile) in t.tiles.iter().enumerate() {
        let inside = tile.x >= zero
            && tile.y >= zero
            && tile.right() <= t.width
            && tile.top() <= t.height;
        if !inside {
            contained = false;
            failures.push(Failure {
                tiles: vec![i],
                reason: "extends outside the bounds".to_string(),
            });
        }
    }

    let overlaps = overlapping_pairs(t);
    let disjoint = overlaps.is_empty();
    failures.extend(overlaps.into_iter().map(|(i, j)| Failure {
        tiles: vec![i, j],
        reason: "interiors overlap".to_string(),
    }));

    let total = total_area(t);
    let expected = &t.width * &t.height;
    let covered = total == expected;
    if !covered {
        failures.push(Failure {
            tiles: vec![],
            reason: format!("tile areas sum to {total}, bounds have area {expected}"),
        });
    }

    let guillotine = covered && disjoint && contained && guillotine::splits_fully(t);
    Ok(VerifyReport {
        covered,
        disjoint,
        contained,
        ratios_ok: None,
        guillotine,
        failures,
    })
}

/// `Σ w·h` over the tiles, summed without intermediate reductions.
fn total_area(t: &Tiling) -> Quad {
    let [mut rational, mut radical, mut cross] = [FracSum::default(), FracSum::default(), FracSum::default()];
    for tile in &t.tiles {
        let (we, wf) = (Frac::of(tile.w.e()), Frac::of(tile.w.f()));
        let (he, hf) = (Frac::of(tile.h.e()), Frac::of(tile.h.f()));
        rational.push(we.mul(&he));
        radical.push(wf.mul(&hf));
        cross.push(we.mul(&hf).add(&wf.mul(&he)));
    }
    let e = rational.total() + t.ctx().p() * radical.total();
    Quad::new(t.ctx(), e, cross.total())
}

/// Filtered tile edges `(x, right, y, top)`, computed once.
pub(crate) fn edges(t: &Tiling) -> Vec<[Filtered; 4]> {
    t.tiles
        .iter()
        .map(|tile| {
            [
                Filtered::new(tile.x.clone()),
                Filtered::new(tile.right()),
                Filtered::new(tile.y.clone()),
                Filtered::new(tile.top()),
            ]
        })
        .collect()
}

/// Sweep over x keeping the tiles whose open x-interval contains the sweep
/// position, ordered by their lower y edge. Those tiles must be pairwise
/// y-disjoint, so a new tile can only collide with its neighbours in that
/// order. On the first collision, fall back to the quadratic scan so every
/// offending pair gets reported.
fn overlapping_pairs(t: &Tiling) -> Vec<(usize, usize)> {
    let n = t.tiles.len();
    let edges = edges(t);
    let [x0, x1, y0, y1] = [0, 1, 2, 3];
    let mut by_start: Vec<usize> = (0..n).collect();
    by_start.sort_by(|&a, &b| edges[a][x0].cmp(&edges[b][x0]));
    let mut by_end: Vec<usize> = (0..n).collect();
    by_end.sort_by(|&a, &b| edges[a][x1].cmp(&edges[b][x1]));

    let mut active: BTreeMap<&Filtered, usize> = BTreeMap::new();
    let mut end_ptr = 0;
    let mut clash = false;
    for &i in &by_start {
        let start = &edges[i][x0];
        while end_ptr < n && edges[by_end[end_ptr]][x1] <= *start {
            let j = by_end[end_ptr];
            if active.get(&edges[j][y0]) == Some(&j) {
                active.remove(&edges[j][y0]);
            }
            end_ptr += 1;
        }
        let low = &edges[i][y0];
        let below = active.range::<&Filtered, _>(..low).next_back();
        let above = active.range::<&Filtered, _>(low..).next();
        if below.is_some_and(|(_, &b)| edges[b][y1] > *low)
            || above.is_some_and(|(&key, _)| *key < edges[i][y1])
        {
            clash = true;
            break;
        }
        active.insert(low, i);
    }
    if !clash {
        return Vec::new();
    }
    let open = |a: usize, b: usize, lo: usize, hi: usize| {
        edges[a][lo] < edges[b][hi] && edges[b][lo] < edges[a][hi]
    };
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if open(i, j, x0, x1) && open(i, j, y0, y1) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Every tile must have `w/h` or `h/w` equal to one of `shapes`. Tiles
/// without a `shape_index` get the first matching index; a stale index is
/// replaced by a matching one.
pub fn verify_ratios(t: &mut Tiling, shapes: &[Quad]) -> RatioReport {
    let mut failures = Vec::new();
    for (i, tile) in t.tiles.iter_mut().enumerate() {
        let fits = |x: &Quad| tile.h.is_product_of(x, &tile.w) || tile.w.is_product_of(x, &tile.h);
        let labelled = tile
            .shape_index
            .filter(|&k| shapes.get(k).is_some_and(|x| fits(x)));
        match labelled.or_else(|| shapes.iter().position(|x| fits(x))) {
            Some(k) => tile.shape_index = Some(k),
            None => failures.push(Failure {
                tiles: vec![i],
                reason: format!("{} × {} matches no allowed ratio", tile.w, tile.h),
            }),
        }
    }
    RatioReport {
        ok: failures.is_empty(),
        failures,
    }
}

/// Exact cover plus ratio check in one report.
pub fn verify(t: &mut Tiling, shapes: &[Quad]) -> Result<VerifyReport, TilingError> {
    let mut report = verify_exact_cover(t)?;
    let ratios = verify_ratios(t, shapes);
    report.ratios_ok = Some(ratios.ok);
    report.failures.extend(ratios.failures);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactfield::{int, rat, FieldContext};
    use crate::tiling::PlacedTile;

    fn ctx() -> Arc<FieldContext> {
        FieldContext::new(int(2)).unwrap()
    }

    fn r(c: &Arc<FieldContext>, n: i64, d: i64) -> Quad {
        Quad::from_rational(c, rat(n, d))
    }

    fn tile(c: &Arc<FieldContext>, x: (i64, i64), y: (i64, i64), w: Quad, h: Quad) -> PlacedTile {
        PlacedTile::new(r(c, x.0, x.1), r(c, y.0, y.1), w, h, None)
    }

    #[test]
    fn stacked_unit_squares() {
        let c = ctx();
        let one = Quad::one(&c);
        let t = Tiling::new(
            one.clone(),
            r(&c, 2, 1),
            vec![
                tile(&c, (0, 1), (0, 1), one.clone(), one.clone()),
                tile(&c, (0, 1), (1, 1), one.clone(), one.clone()),
            ],
        )
        .unwrap();
        let report = verify_exact_cover(&t).unwrap();
        assert!(report.is_dissection());
        assert!(report.guillotine);
        assert!(report.failures.is_empty());
    }

    #[test]
    fn overlap_is_reported() {
        let c = ctx();
        let one = Quad::one(&c);
        let t = Tiling::new(
            one.clone(),
            r(&c, 2, 1),
            vec![
                tile(&c, (0, 1), (0, 1), one.clone(), one.clone()),
                tile(&c, (0, 1), (1, 2), one.clone(), one.clone()),
            ],
        )
        .unwrap();
        let report = verify_exact_cover(&t).unwrap();
        assert!(!report.disjoint);
        assert!(report.contained);
        // areas still balance: 1 + 1 = 1·2
        assert!(report.covered);
        assert!(!report.guillotine);
        assert!(report
            .failures
            .iter()
            .any(|f| f.tiles == vec![0, 1] && f.reason == "interiors overlap"));
    }

    #[test]
    fn irrational_stack() {
        let c = ctx();
        let one = Quad::one(&c);
        let sqrt2 = Quad::from_ints(&c, 0, 1);
        let t = Tiling::new(
            one.clone(),
            Quad::from_ints(&c, 1, 1),
            vec![
                tile(&c, (0, 1), (0, 1), one.clone(), one.clone()),
                tile(&c, (0, 1), (1, 1), one.clone(), sqrt2),
            ],
        )
        .unwrap();
        assert!(verify_exact_cover(&t).unwrap().is_dissection());
    }

    #[test]
    fn escaping_tile_and_gap() {
        let c = ctx();
        let one = Quad::one(&c);
        let t = Tiling::new(
            one.clone(),
            one.clone(),
            vec![tile(&c, (1, 2), (0, 1), one.clone(), one.clone())],
        )
        .unwrap();
        let report = verify_exact_cover(&t).unwrap();
        assert!(!report.contained);
        assert!(report.covered);
        let t = Tiling::new(
            one.clone(),
            one.clone(),
            vec![tile(&c, (0, 1), (0, 1), r(&c, 1, 2), one.clone())],
        )
        .unwrap();
        let report = verify_exact_cover(&t).unwrap();
        assert!(report.contained && report.disjoint && !report.covered);
    }

    #[test]
    fn touching_edges_do_not_overlap() {
        // 2×2 grid of unit squares in a 2×2 box, inserted in scrambled order
        let c = ctx();
        let one = Quad::one(&c);
        let two = r(&c, 2, 1);
        let tiles = vec![
            tile(&c, (1, 1), (1, 1), one.clone(), one.clone()),
            tile(&c, (0, 1), (0, 1), one.clone(), one.clone()),
            tile(&c, (0, 1), (1, 1), one.clone(), one.clone()),
            tile(&c, (1, 1), (0, 1), one.clone(), one.clone()),
        ];
        let t = Tiling::new(two.clone(), two, tiles).unwrap();
        let report = verify_exact_cover(&t).unwrap();
        assert!(report.is_dissection(), "{report:?}");
    }

    #[test]
    fn nested_overlap_found_by_sweep() {
        // a small tile sitting inside a big one; only the sweep's successor
        // check sees it
        let c = ctx();
        let t = Tiling::new(
            r(&c, 4, 1),
            r(&c, 4, 1),
            vec![
                tile(&c, (0, 1), (0, 1), r(&c, 4, 1), r(&c, 4, 1)),
                tile(&c, (1, 1), (1, 1), r(&c, 1, 1), r(&c, 1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(overlapping_pairs(&t), vec![(0, 1)]);
    }

    #[test]
    fn ratio_checks() {
        let c = ctx();
        let one = Quad::one(&c);
        let x = Quad::from_ints(&c, 1, 1);
        let shapes = [x.clone()];
        let mut t = Tiling::new(
            one.clone(),
            x.clone(),
            vec![tile(&c, (0, 1), (0, 1), one.clone(), x.clone())],
        )
        .unwrap();
        assert!(verify_ratios(&mut t, &shapes).ok);
        assert_eq!(t.tiles()[0].shape_index, Some(0));

        let mut t = Tiling::new(
            x.clone(),
            one.clone(),
            vec![tile(&c, (0, 1), (0, 1), x.clone(), one.clone())],
        )
        .unwrap();
        assert!(verify_ratios(&mut t, &shapes).ok);

        let sq = Quad::from_ints(&c, 3, 2);
        let mut t = Tiling::new(
            one.clone(),
            sq.clone(),
            vec![tile(&c, (0, 1), (0, 1), one.clone(), sq)],
        )
        .unwrap();
        let report = verify_ratios(&mut t, &shapes);
        assert!(!report.ok);
        assert_eq!(report.failures[0].tiles, vec![0]);
    }
}
