use super::verify::{edges, verify_exact_cover};
use super::{Tiling, TilingError};
use crate::exactfield::Filtered;

/// Whether the tiling can be produced by recursive full-width or
/// full-height cuts.
pub fn is_guillotine(t: &Tiling) -> Result<bool, TilingError> {
    let report = verify_exact_cover(t)?;
    if !report.is_dissection() {
        return Err(TilingError::NotADissection);
    }
    Ok(report.guillotine)
}

/// Splits `region` at every full cut along the edge pair `lo`/`hi` of
/// [`edges`], in ascending order. Returns a single group when there is no
/// cut.
fn slabs(edges: &[[Filtered; 4]], region: &[usize], lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut order = region.to_vec();
    order.sort_by(|&a, &b| edges[a][lo].cmp(&edges[b][lo]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut reach: Option<&Filtered> = None;
    for i in order {
        match reach {
            Some(r) if edges[i][lo] < *r => {
                groups.last_mut().expect("open group").push(i);
                if edges[i][hi] > *r {
                    reach = Some(&edges[i][hi]);
                }
            }
            _ => {
                groups.push(vec![i]);
                reach = Some(&edges[i][hi]);
            }
        }
    }
    groups
}

/// Guillotine test for a tiling already known to be an exact dissection.
/// Splitting at every available cut is safe: a sub-rectangle of a
/// guillotine tiling that is a union of tiles is itself guillotine.
pub(crate) fn splits_fully(t: &Tiling) -> bool {
    if t.tiles.is_empty() {
        return false;
    }
    let edges = edges(t);
    let mut work = vec![(0..t.tiles.len()).collect::<Vec<_>>()];
    while let Some(region) = work.pop() {
        if region.len() == 1 {
            continue;
        }
        let mut split = false;
        // vertical cuts (x edges) first, then horizontal ones
        for (lo, hi) in [(0, 1), (2, 3)] {
            let groups = slabs(&edges, &region, lo, hi);
            if groups.len() > 1 {
                work.extend(groups);
                split = true;
                break;
            }
        }
        if !split {
            return false;
        }
    }
    true
}
