//! Shared fixtures and an independent game oracle for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use mbtd_core::game::Player;
use mbtd_core::graph::{generate_family, Graph};

/// Plain full-tree minimax over ownership masks. It recomputes both win conditions
/// from raw neighbourhoods and shares no code with the solver.
pub struct Oracle {
    hoods: Vec<u64>,
    n: usize,
    memo: HashMap<(u64, u64, bool), bool>,
}

impl Oracle {
    pub fn new(g: &Graph) -> Self {
        let hoods = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
            .collect();
        Oracle { hoods, n: g.n(), memo: HashMap::new() }
    }

    /// Winner of the game if it is already decided.
    pub fn decided(&self, dom: u64, sta: u64) -> Option<Player> {
        if self.hoods.iter().any(|&h| h & sta == h) {
            Some(Player::Staller)
        } else if self.hoods.iter().all(|&h| h & dom != 0) {
            Some(Player::Dominator)
        } else {
            None
        }
    }

    /// Whether Staller wins with optimal play from the given masks.
    pub fn staller_wins(&mut self, dom: u64, sta: u64, staller_to_move: bool) -> bool {
        if let Some(w) = self.decided(dom, sta) {
            return w == Player::Staller;
        }
        if let Some(&r) = self.memo.get(&(dom, sta, staller_to_move)) {
            return r;
        }
        let free: Vec<usize> = (0..self.n).filter(|&v| (dom | sta) >> v & 1 == 0).collect();
        let r = if staller_to_move {
            free.iter().any(|&v| self.staller_wins(dom, sta | 1 << v, false))
        } else {
            free.iter().all(|&v| self.staller_wins(dom | 1 << v, sta, true))
        };
        self.memo.insert((dom, sta, staller_to_move), r);
        r
    }

    pub fn winner(&mut self, first: Player) -> Player {
        if self.staller_wins(0, 0, first == Player::Staller) {
            Player::Staller
        } else {
            Player::Dominator
        }
    }
}

fn family(name: &str, params: &[usize]) -> (String, Graph) {
    (format!("{name}{params:?}"), generate_family(name, params).unwrap())
}

/// Named fixture graphs, small enough for exact solving.
pub fn fixtures() -> Vec<(String, Graph)> {
    let mut v = vec![
        family("complete", &[1]),
        family("complete", &[2]),
        family("complete", &[4]),
        family("complete", &[5]),
        family("k33", &[]),
        family("prism", &[]),
        family("two-triangles-diamond", &[]),
        family("truncated-k4", &[]),
        family("diamond-necklace", &[2]),
        family("diamond-necklace", &[3]),
        family("claw-necklace", &[2]),
        family("claw-necklace", &[3]),
        family("omega", &[1]),
        family("heawood", &[]),
    ];
    for n in 3..=9 {
        v.push(family("cycle", &[n]));
    }
    for n in 3..=7 {
        v.push(family("gp", &[n, 1]));
    }
    for n in 5..=8 {
        v.push(family("gp", &[n, 2]));
    }
    for m in 3..=5 {
        v.push(family("circulant", &[m]));
    }
    v
}

pub fn fixtures_up_to(n: usize) -> Vec<(String, Graph)> {
    fixtures().into_iter().filter(|(_, g)| g.n() <= n).collect()
}

/// Every catalog cubic graph the generators produce at test scale.
pub fn generated_cubic() -> Vec<(String, Graph)> {
    let mut v = Vec::new();
    for n in 3..=30 {
        for k in 1..n {
            if 2 * k < n {
                v.push(family("gp", &[n, k]));
            }
        }
    }
    for d in 2..=7 {
        v.push(family("diamond-necklace", &[d]));
    }
    for k in 2..=7 {
        v.push(family("claw-necklace", &[k]));
    }
    for m in 3..=10 {
        v.push(family("circulant", &[m]));
    }
    for m in 1..=3 {
        v.push(family("omega", &[m]));
    }
    for name in ["prism", "truncated-k4", "k33", "heawood", "eta", "two-triangles-diamond"] {
        v.push(family(name, &[]));
    }
    v.push(family("complete", &[4]));
    v.into_iter().filter(|(_, g)| g.is_cubic()).collect()
}
