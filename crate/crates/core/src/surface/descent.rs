//! Greedy max-norm descent and orbit search.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Signed;

use super::{Axis, MarkoffSurface, MoveWord, Step, SurfacePoint, Sym};
use crate::error::{Error, Result};

const DESCENT_CAP: usize = 100_000;
const ORBIT_NODE_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
pub struct Descent {
    pub point: SurfacePoint<BigInt>,
    pub word: MoveWord,
    /// Max-norms along the way, starting with the input.
    pub norms: Vec<BigInt>,
}

/// Applies norm-decreasing Vieta moves until none is left.
///
/// Among decreasing moves the one with the smallest new norm wins, then the
/// smallest sum of absolute values, then the first axis.
pub fn descend(s: &MarkoffSurface, p: &SurfacePoint<BigInt>) -> Result<Descent> {
    if !s.contains(p) {
        return Err(Error::OffSurface(format!("{p} has residual {}", s.eval(p))));
    }
    let mut cur = p.clone();
    let mut word = MoveWord::default();
    let mut norms = vec![cur.norm()];
    while let Some((axis, next)) = best_move(s, &cur) {
        if word.0.len() >= DESCENT_CAP {
            return Err(Error::bound(
                "descent",
                format!("stopped at {cur} after {DESCENT_CAP} moves"),
            ));
        }
        word.push(Step::Move(axis));
        norms.push(next.norm());
        cur = next;
    }
    Ok(Descent {
        point: cur,
        word,
        norms,
    })
}

pub(super) fn best_move(
    s: &MarkoffSurface,
    p: &SurfacePoint<BigInt>,
) -> Option<(Axis, SurfacePoint<BigInt>)> {
    let n = p.norm();
    Axis::ALL
        .iter()
        .map(|&a| (a, s.vieta_move_unchecked(a, p)))
        .filter(|(_, q)| q.norm() < n)
        .min_by(|(a1, q1), (a2, q2)| {
            (q1.norm(), q1.abs_sum(), *a1).cmp(&(q2.norm(), q2.abs_sum(), *a2))
        })
}

/// Ordering used to pick one point per symmetry class: fewest negative
/// coordinates first, then lexicographic.
fn class_key(p: &SurfacePoint<BigInt>) -> (usize, &SurfacePoint<BigInt>) {
    (p.0.iter().filter(|c| c.is_negative()).count(), p)
}

/// The preferred image of `p` under `syms`, and the symmetry that produces it.
pub fn canonical_image(syms: &[Sym], p: &SurfacePoint<BigInt>) -> (SurfacePoint<BigInt>, Sym) {
    syms.iter()
        .map(|g| (g.apply(p), *g))
        .min_by(|(a, _), (b, _)| class_key(a).cmp(&class_key(b)))
        .unwrap_or((p.clone(), Sym::IDENTITY))
}

/// Looks for a word in moves and symmetries carrying `p` to `q`, using at
/// most `depth` moves.
///
/// Both points are first descended. When their minimal points agree up to
/// symmetry the answer is immediate; otherwise a breadth-first search runs
/// from the minimal point of `p` over symmetry classes.
pub fn orbit_equal(
    s: &MarkoffSurface,
    p: &SurfacePoint<BigInt>,
    q: &SurfacePoint<BigInt>,
    depth: usize,
) -> Result<Option<MoveWord>> {
    let syms = s.symmetries();
    let dp = descend(s, p)?;
    let dq = descend(s, q)?;
    let used = dp.word.move_count() + dq.word.move_count();
    if used > depth {
        return Ok(None);
    }
    let (cp, gp) = canonical_image(&syms, &dp.point);
    let (cq, gq) = canonical_image(&syms, &dq.point);
    let middle = if cp == cq {
        MoveWord::default()
    } else {
        match bfs(s, &syms, &cp, &cq, depth - used) {
            Some(w) => w,
            None => return Ok(None),
        }
    };
    let mut word = dp.word.clone();
    word.push(Step::Sym(gp));
    for step in middle.0 {
        word.push(step);
    }
    word.push(Step::Sym(gq.inverse()));
    for step in dq.word.inverse().0 {
        word.push(step);
    }
    Ok(Some(merge_syms(word)))
}

fn bfs(
    s: &MarkoffSurface,
    syms: &[Sym],
    from: &SurfacePoint<BigInt>,
    to: &SurfacePoint<BigInt>,
    depth: usize,
) -> Option<MoveWord> {
    type Edge = (SurfacePoint<BigInt>, Axis, Sym);
    let mut parent: HashMap<SurfacePoint<BigInt>, Option<Edge>> =
        HashMap::from([(from.clone(), None)]);
    let mut queue = VecDeque::from([(from.clone(), 0usize)]);
    while let Some((node, dist)) = queue.pop_front() {
        if &node == to {
            let mut steps = Vec::new();
            let mut cur = node;
            while let Some(Some((prev, axis, g))) = parent.get(&cur).cloned() {
                steps.push(Step::Sym(g));
                steps.push(Step::Move(axis));
                cur = prev;
            }
            steps.reverse();
            let mut w = MoveWord::default();
            for st in steps {
                w.push(st);
            }
            return Some(w);
        }
        if dist == depth || parent.len() > ORBIT_NODE_CAP {
            continue;
        }
        for axis in Axis::ALL {
            let (next, g) = canonical_image(syms, &s.vieta_move_unchecked(axis, &node));
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((node.clone(), axis, g)));
                queue.push_back((next, dist + 1));
            }
        }
    }
    None
}

/// Fuses runs of adjacent symmetries into one.
fn merge_syms(w: MoveWord) -> MoveWord {
    let mut out = MoveWord::default();
    let mut pending: Option<Sym> = None;
    for step in w.0 {
        match step {
            Step::Sym(g) => pending = Some(pending.map_or(g, |h| h.then(&g))),
            Step::Move(a) => {
                if let Some(g) = pending.take() {
                    out.push(Step::Sym(g));
                }
                out.push(Step::Move(a));
            }
        }
    }
    if let Some(g) = pending {
        out.push(Step::Sym(g));
    }
    out
}
