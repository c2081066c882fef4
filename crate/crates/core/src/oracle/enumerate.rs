use crate::betweenness::GroundSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pointset::PointSet;
use crate::poset::Poset;

pub const GRAPH_CAP: usize = 8;
pub const POSET_CAP: usize = 6;

pub fn graph_count(n: usize) -> u64 {
    1u64 << (n * n.saturating_sub(1) / 2)
}

/// Every labeled graph on `n` vertices, in edge-bitmask order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > GRAPH_CAP {
        return Err(Error::CapExceeded { n, cap: GRAPH_CAP });
    }
    GroundSet::new(n)?;
    Ok((0..graph_count(n)).map(move |mask| Graph::from_edge_mask(n, mask).expect("n within cap")))
}

/// `rows[x]` holds the points above `x`, one bit each.
type Rows = [u8; 8];

/// Depth-first extension of a poset on `0..k` to all posets on `0..n`.
///
/// Point `k` receives a down-closed set `D` below it and an up-closed set
/// `U` above it with `D ≺ U` elementwise, which is exactly the condition
/// for the extended relation to stay transitive.
fn extend(rows: &mut Rows, k: usize, n: usize, visit: &mut dyn FnMut(&Rows)) {
    if k == n {
        visit(rows);
        return;
    }
    let mut below = [0u8; 8];
    for x in 0..k {
        for y in 0..k {
            if rows[x] >> y & 1 == 1 {
                below[y] |= 1 << x;
            }
        }
    }
    let members = |s: u8| (0..k).filter(move |x| s >> x & 1 == 1);
    for down in 0..1u16 << k {
        let down = down as u8;
        if members(down).any(|x| below[x] & !down != 0) {
            continue;
        }
        for up in 0..1u16 << k {
            let up = up as u8;
            if up & down != 0
                || members(up).any(|x| rows[x] & !up != 0)
                || members(down).any(|x| rows[x] & up != up)
            {
                continue;
            }
            let saved = *rows;
            for x in members(down) {
                rows[x] |= 1 << k;
            }
            rows[k] = up;
            extend(rows, k + 1, n, visit);
            *rows = saved;
        }
    }
}

fn rows_to_mask(rows: &Rows, n: usize) -> u64 {
    let mut mask = 0;
    for a in 0..n {
        for b in 0..n {
            if rows[a] >> b & 1 == 1 {
                mask |= 1 << (a * n + b);
            }
        }
    }
    mask
}

pub(crate) fn mask_to_poset(n: usize, mask: u64) -> Poset {
    let above = (0..n)
        .map(|a| PointSet::from_points(n, (0..n).filter(|b| mask >> (a * n + b) & 1 == 1)))
        .collect();
    Poset::from_closed(GroundSet::new(n).expect("n >= 1"), above)
}

/// Prefix posets on `min(n, 4)` points; extending each in order reproduces
/// the full depth-first order.
pub(crate) fn poset_prefixes(n: usize) -> Vec<Rows> {
    let mut out = Vec::new();
    extend(&mut [0; 8], 0, n.min(4), &mut |r| out.push(*r));
    out
}

pub(crate) fn extend_prefix(prefix: &Rows, n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rows = *prefix;
    extend(&mut rows, n.min(4), n, &mut |r| out.push(rows_to_mask(r, n)));
    out
}

/// Order masks (see [`Poset::order_mask`]) of every labeled poset on `n`
/// points, in depth-first insertion order.
pub fn poset_masks(n: usize) -> Result<Vec<u64>> {
    if n > POSET_CAP {
        return Err(Error::CapExceeded { n, cap: POSET_CAP });
    }
    GroundSet::new(n)?;
    Ok(poset_prefixes(n).iter().flat_map(|p| extend_prefix(p, n)).collect())
}

pub fn enumerate_posets(n: usize) -> Result<impl Iterator<Item = Poset>> {
    Ok(poset_masks(n)?.into_iter().map(move |m| mask_to_poset(n, m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_graphs(2).unwrap().count(), 2);
        assert_eq!(enumerate_graphs(3).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(4).unwrap().count(), 64);
        let counts: Vec<_> = (1..=4).map(|n| poset_masks(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 19, 219]);
    }

    #[test]
    fn caps() {
        assert!(matches!(enumerate_graphs(9), Err(Error::CapExceeded { n: 9, cap: 8 })));
        assert!(matches!(poset_masks(7), Err(Error::CapExceeded { n: 7, cap: 6 })));
    }

    #[test]
    fn posets_are_valid_and_distinct() {
        let masks = poset_masks(5).unwrap();
        let mut sorted = masks.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), masks.len());
        for &m in &masks {
            let p = mask_to_poset(5, m);
            assert_eq!(Poset::from_order_mask(5, m).unwrap(), p);
        }
    }
}
