//! Bitset depth-first face counter.
//!
//! Every non-face pattern is a block `B` of oriented edges with a threshold
//! `t`: a set is a non-face as soon as it holds `t` members of `B` (antipodal
//! pairs are the blocks of size two with `t = 2`). Walking subsets in
//! increasing vertex order, a block whose count reaches `t - 1` bans its
//! remaining members from every extension, so the set of admissible next
//! vertices is a bitmask and the children of the last level are counted by
//! popcount instead of being visited.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

pub(crate) struct Problem {
    pub vertices: usize,
    words: usize,
    masks: Vec<u64>,
    trigger: Vec<u32>,
    blocks_of: Vec<Vec<u32>>,
}

impl Problem {
    /// `vertices` must be even; vertex `v` and `v ^ 1` are antipodal.
    /// Each block is a list of vertices with its threshold.
    pub fn new(vertices: usize, blocks: &[(Vec<usize>, u32)]) -> Problem {
        let words = vertices.div_ceil(64).max(1);
        let mut masks = vec![0u64; blocks.len() * words];
        let mut trigger = Vec::with_capacity(blocks.len());
        let mut blocks_of = vec![Vec::new(); vertices];
        for (c, (members, t)) in blocks.iter().enumerate() {
            debug_assert!(*t >= 2);
            trigger.push(t - 1);
            for &v in members {
                masks[c * words + v / 64] |= 1 << (v % 64);
                blocks_of[v].push(c as u32);
            }
        }
        Problem {
            vertices,
            words,
            masks,
            trigger,
            blocks_of,
        }
    }

    fn block_mask(&self, c: usize) -> &[u64] {
        &self.masks[c * self.words..(c + 1) * self.words]
    }
}

pub(crate) struct Outcome {
    /// `counts[s]` = number of faces with `s` vertices, `s = 0..=max_size`.
    pub counts: Vec<u64>,
    /// Faces of exactly `max_size` vertices, if requested.
    pub top: Option<Vec<Vec<usize>>>,
}

#[derive(Debug)]
pub(crate) struct CapHit;

struct Walker<'a> {
    p: &'a Problem,
    max_size: usize,
    cnt: Vec<u32>,
    chosen: Vec<usize>,
    // allowed-extension mask per level
    levels: Vec<u64>,
    counts: Vec<u64>,
    top: Option<Vec<Vec<usize>>>,
    pending_work: u64,
    work: &'a AtomicU64,
    cap: u64,
    aborted: &'a AtomicBool,
}

impl<'a> Walker<'a> {
    fn level(&self, l: usize) -> &[u64] {
        let w = self.p.words;
        &self.levels[l * w..(l + 1) * w]
    }

    fn charge(&mut self, amount: u64) -> bool {
        self.pending_work += amount;
        if self.pending_work >= 1 << 12 {
            let total = self.work.fetch_add(self.pending_work, Ordering::Relaxed) + self.pending_work;
            self.pending_work = 0;
            if total > self.cap {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    /// Writes into level `l + 1` the extensions of `chosen + v` and bumps
    /// the block counters.
    fn descend(&mut self, l: usize, v: usize) {
        let w = self.p.words;
        let (lo, hi) = self.levels.split_at_mut((l + 1) * w);
        let src = &lo[l * w..];
        let dst = &mut hi[..w];
        // keep only vertices after v
        for (i, d) in dst.iter_mut().enumerate() {
            let base = i * 64;
            *d = if base + 64 <= v + 1 {
                0
            } else if base > v {
                src[i]
            } else {
                src[i] & (!0u64 << (v + 1 - base))
            };
        }
        let anti = v ^ 1;
        dst[anti / 64] &= !(1 << (anti % 64));
        for &c in &self.p.blocks_of[v] {
            let c = c as usize;
            self.cnt[c] += 1;
            if self.cnt[c] == self.p.trigger[c] {
                for (d, m) in dst.iter_mut().zip(self.p.block_mask(c)) {
                    *d &= !m;
                }
            }
        }
        self.chosen.push(v);
    }

    fn ascend(&mut self) {
        let v = self.chosen.pop().unwrap();
        for &c in &self.p.blocks_of[v] {
            self.cnt[c as usize] -= 1;
        }
    }

    fn walk(&mut self, l: usize) {
        let pop: u64 = self.level(l).iter().map(|x| x.count_ones() as u64).sum();
        self.counts[l + 1] += pop;
        if l + 1 == self.max_size {
            if let Some(top) = self.top.as_mut() {
                for v in bits(&self.levels[l * self.p.words..(l + 1) * self.p.words]) {
                    let mut f = self.chosen.clone();
                    f.push(v);
                    top.push(f);
                }
            }
            return;
        }
        if !self.charge(pop + 1) {
            return;
        }
        let members: Vec<usize> = bits(self.level(l)).collect();
        for v in members {
            self.descend(l, v);
            self.walk(l + 1);
            self.ascend();
        }
    }
}

fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut x = w;
        std::iter::from_fn(move || {
            if x == 0 {
                None
            } else {
                let b = x.trailing_zeros() as usize;
                x &= x - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Counts faces with at most `max_size` vertices. Top-level branches run
/// in parallel; the result does not depend on the schedule.
pub(crate) fn count(
    p: &Problem,
    max_size: usize,
    collect_top: bool,
    cap: u64,
) -> Result<Outcome, CapHit> {
    let mut counts = vec![0u64; max_size + 1];
    counts[0] = 1;
    if max_size == 0 || p.vertices == 0 {
        return Ok(Outcome {
            counts,
            top: collect_top.then(|| if max_size == 0 { vec![vec![]] } else { vec![] }),
        });
    }
    let work = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let w = p.words;
    let new_walker = || {
        let mut levels = vec![0u64; (max_size + 1) * w];
        for v in 0..p.vertices {
            levels[v / 64] |= 1 << (v % 64);
        }
        Walker {
            p,
            max_size,
            cnt: vec![0; p.trigger.len()],
            chosen: Vec::new(),
            levels,
            counts: vec![0; max_size + 1],
            top: collect_top.then(Vec::new),
            pending_work: 0,
            work: &work,
            cap,
            aborted: &aborted,
        }
    };

    counts[1] = p.vertices as u64;
    if max_size == 1 {
        return Ok(Outcome {
            counts,
            top: collect_top.then(|| (0..p.vertices).map(|v| vec![v]).collect()),
        });
    }
    let parts: Vec<(Vec<u64>, Option<Vec<Vec<usize>>>)> = (0..p.vertices)
        .into_par_iter()
        .map(|v| {
            let mut walker = new_walker();
            walker.descend(0, v);
            walker.walk(1);
            work.fetch_add(walker.pending_work, Ordering::Relaxed);
            (walker.counts, walker.top)
        })
        .collect();
    if aborted.load(Ordering::Relaxed) || work.load(Ordering::Relaxed) > cap {
        return Err(CapHit);
    }
    let mut top = collect_top.then(Vec::new);
    for (c, t) in parts {
        for (acc, x) in counts.iter_mut().zip(c) {
            *acc += x;
        }
        if let (Some(all), Some(t)) = (top.as_mut(), t) {
            all.extend(t);
        }
    }
    Ok(Outcome { counts, top })
}
