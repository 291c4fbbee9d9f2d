//! The recursive search over residual set systems.
//!
//! A state is the list of live winning sets, each reduced to the vertices Staller still
//! needs, plus the side to move. Masks are raw `u64` here for speed.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use dashmap::DashMap;

use super::SolverConfig;

pub(crate) type Key = Box<[u64]>;

pub(crate) struct Abort;

/// Per-call counters, shared by root workers.
pub(crate) struct Ctx<'a> {
    pub cfg: &'a SolverConfig,
    pub memo: &'a DashMap<Key, bool>,
    pub nodes: AtomicU64,
    pub hits: AtomicU64,
    pub max_depth: AtomicUsize,
    pub aborted: AtomicBool,
    pub start: Instant,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a SolverConfig, memo: &'a DashMap<Key, bool>) -> Self {
        Ctx {
            cfg,
            memo,
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
            max_depth: AtomicUsize::new(0),
            aborted: AtomicBool::new(false),
            start: Instant::now(),
        }
    }

    fn tick(&self, depth: usize) -> Result<(), Abort> {
        if self.aborted.load(Ordering::Relaxed) {
            return Err(Abort);
        }
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        self.max_depth.fetch_max(depth, Ordering::Relaxed);
        let over_nodes = n > self.cfg.node_budget;
        let over_time = n % 4096 == 0 && self.start.elapsed() > self.cfg.time_budget;
        if over_nodes || over_time {
            self.aborted.store(true, Ordering::Relaxed);
            return Err(Abort);
        }
        Ok(())
    }
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Sorts, deduplicates and drops supersets. Staller completing a superset would have
/// completed the subset first, so supersets never change the value.
pub(crate) fn normalize(sets: &mut Vec<u64>) {
    sets.sort_unstable_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for &s in sets.iter() {
        if !kept.iter().any(|&k| k & s == k) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    *sets = kept;
}

pub(crate) fn apply(sets: &[u64], v: usize, staller: bool, full_norm: bool) -> Vec<u64> {
    let b = bit(v);
    let mut out: Vec<u64> = if staller {
        sets.iter().map(|&s| s & !b).collect()
    } else {
        sets.iter().copied().filter(|&s| s & b == 0).collect()
    };
    if full_norm {
        normalize(&mut out);
    }
    out
}

pub(crate) fn singles(sets: &[u64]) -> u64 {
    sets.iter().filter(|s| s.count_ones() == 1).fold(0, |a, &s| a | s)
}

/// A Staller move after which two distinct single-vertex threats exist.
pub(crate) fn double_trap_vertex(sets: &[u64]) -> Option<usize> {
    let pairs: Vec<u64> = sets.iter().copied().filter(|s| s.count_ones() == 2).collect();
    let mut cand = pairs.iter().fold(0u64, |a, &s| a | s);
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let others = pairs
            .iter()
            .filter(|&&s| s & bit(v) != 0)
            .fold(0u64, |a, &s| a | (s & !bit(v)));
        if others.count_ones() >= 2 {
            return Some(v);
        }
    }
    None
}

/// Renames elements by first occurrence over the sorted sets, so isomorphic residual
/// systems that differ only by vertex names often share an entry.
pub(crate) fn canonical_key(sets: &[u64], staller: bool, free: Option<u64>) -> Key {
    let mut key = Vec::with_capacity(sets.len() + 3);
    key.push(sets.len() as u64);
    key.push(staller as u64);
    match free {
        Some(f) => {
            let mut s = sets.to_vec();
            s.sort_unstable();
            key.push(f);
            key.extend(s);
        }
        None => {
            let mut sorted = sets.to_vec();
            sorted.sort_unstable();
            let mut map = [u8::MAX; 64];
            let mut next = 0u8;
            let mut renamed: Vec<u64> = Vec::with_capacity(sorted.len());
            for &s in &sorted {
                let mut m = s;
                let mut r = 0u64;
                while m != 0 {
                    let v = m.trailing_zeros() as usize;
                    m &= m - 1;
                    if map[v] == u8::MAX {
                        map[v] = next;
                        next += 1;
                    }
                    r |= bit(map[v] as usize);
                }
                renamed.push(r);
            }
            renamed.sort_unstable();
            key.extend(renamed);
        }
    }
    key.into_boxed_slice()
}

/// Candidate moves with dominated ones removed: `x` is skipped when every set containing
/// `x` also contains some other candidate `y` (ties keep the lower id).
pub(crate) fn prune_dominated(sets: &[u64], cands: u64) -> u64 {
    if sets.len() > 64 {
        return cands;
    }
    let mut mem = [0u64; 64];
    for (i, &s) in sets.iter().enumerate() {
        let mut m = s & cands;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            mem[v] |= 1u64 << i;
        }
    }
    let mut keep = cands;
    let list: Vec<usize> = iter_bits(cands).collect();
    for &x in &list {
        for &y in &list {
            if x == y || keep & bit(y) == 0 {
                continue;
            }
            let (mx, my) = (mem[x], mem[y]);
            if mx & my == mx && (mx != my || y < x) {
                keep &= !bit(x);
                break;
            }
        }
    }
    keep
}

pub(crate) fn iter_bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn ordered_moves(sets: &[u64], moves: u64) -> Vec<usize> {
    let mut scored: Vec<(u64, usize)> = iter_bits(moves)
        .map(|v| {
            let score = sets
                .iter()
                .filter(|&&s| s & bit(v) != 0)
                .map(|s| 1u64 << (16 - s.count_ones().min(16)))
                .sum::<u64>();
            (score, v)
        })
        .collect();
    scored.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    scored.into_iter().map(|(_, v)| v).collect()
}

/// True iff Staller wins from this state.
pub(crate) fn staller_wins(
    ctx: &Ctx<'_>,
    sets: &[u64],
    free: u64,
    staller: bool,
    depth: usize,
) -> Result<bool, Abort> {
    ctx.tick(depth)?;
    if sets.is_empty() {
        return Ok(false);
    }
    if sets.iter().any(|&s| s == 0) {
        return Ok(true);
    }
    if staller && sets.iter().any(|s| s.count_ones() == 1) {
        return Ok(true);
    }
    let cfg = ctx.cfg;
    let mut forced = None;
    if cfg.threat_extension {
        if staller {
            if double_trap_vertex(sets).is_some() {
                return Ok(true);
            }
        } else {
            let s = singles(sets);
            match s.count_ones() {
                0 => {}
                1 => forced = Some(s),
                _ => return Ok(true),
            }
        }
    }

    let key = canonical_key(sets, staller, (!cfg.hit_set_removal).then_some(free));
    if let Some(v) = ctx.memo.get(&key) {
        ctx.hits.fetch_add(1, Ordering::Relaxed);
        return Ok(*v);
    }

    let moves = match forced {
        Some(m) => m,
        None => {
            let cands = if cfg.hit_set_removal { sets.iter().fold(0, |a, &s| a | s) } else { free };
            if cfg.dominated_move {
                prune_dominated(sets, cands)
            } else {
                cands
            }
        }
    };

    let mut result = !staller;
    for v in ordered_moves(sets, moves) {
        let child = apply(sets, v, staller, cfg.hit_set_removal);
        let w = staller_wins(ctx, &child, free & !bit(v), !staller, depth + 1)?;
        if w == staller {
            result = staller;
            break;
        }
    }
    if ctx.memo.len() < cfg.memo_capacity {
        ctx.memo.insert(key, result);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_drops_supersets_and_duplicates() {
        let mut s = vec![0b111, 0b011, 0b011, 0b1100];
        normalize(&mut s);
        assert_eq!(s, vec![0b011, 0b1100]);
    }

    #[test]
    fn keys_identify_renamed_systems() {
        let a = canonical_key(&[0b0011, 0b0110], true, None);
        let b = canonical_key(&[0b1100, 0b1010], true, None);
        assert_eq!(a, b);
        assert_ne!(a, canonical_key(&[0b0011, 0b0110], false, None));
    }

    #[test]
    fn double_trap_needs_two_partners() {
        assert_eq!(double_trap_vertex(&[0b011, 0b101]), Some(0));
        assert_eq!(double_trap_vertex(&[0b011, 0b011]), None);
    }

    #[test]
    fn dominated_moves_removed() {
        // Vertex 2 lies only in the first set, which also contains 0.
        let keep = prune_dominated(&[0b0111, 0b1001], 0b1111);
        assert_eq!(keep, 0b0001);
    }
}
