//! Deterministic graph families used by tests, the acceptance suite and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn build(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::new(n, edges).expect("generator produced an invalid graph")
}

/// Path graph `P_n` on vertices `0..n`.
pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// Cycle `C_n`, `n ≥ 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    build(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// `width × height` grid; vertex `(x, y)` has id `x·height + y`, matching
/// the flattening of `P_width × P_height`.
pub fn grid(width: usize, height: usize) -> Graph {
    let id = |x: usize, y: usize| x * height + y;
    let mut edges = Vec::new();
    for x in 0..width {
        for y in 0..height {
            if x + 1 < width {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < height {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    build(width * height, edges)
}

pub fn star(leaves: usize) -> Graph {
    build(leaves + 1, (1..=leaves).map(|i| (0, i)).collect())
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build(n, edges)
}

/// A spine `0..=spine` with a hanging path of `tooth` vertices at every spine
/// vertex. Spine vertices keep ids `0..=spine`.
pub fn comb(spine: usize, tooth: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..=spine).map(|i| (i - 1, i)).collect();
    let mut next = spine + 1;
    for s in 0..=spine {
        let mut prev = s;
        for _ in 0..tooth {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    build(next, edges)
}

/// `legs` paths of `leg_len` edges glued at vertex 0.
pub fn spider(legs: usize, leg_len: usize) -> Graph {
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..legs {
        let mut prev = 0;
        for _ in 0..leg_len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    build(next, edges)
}

/// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build(n, (1..n).map(|i| (rng.gen_range(0..i), i)).collect())
}

/// A random tree plus `extra` random chords.
pub fn random_connected(n: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    let max_edges = n * (n - 1) / 2;
    let mut added = 0;
    while added < extra && edges.len() < max_edges {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let e = (u.min(v), u.max(v));
        if u != v && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e) {
            edges.push(e);
            added += 1;
        }
    }
    build(n, edges)
}

/// Parses a generator description such as `path:5`, `cycle:8`, `grid:5x5`,
/// `comb:8x3`, `spider:3x4`, `star:6`, `complete:4`, `tree:30` (random,
/// seeded) or `connected:30+10` (random tree plus chords, seeded).
pub fn from_description(desc: &str, seed: u64) -> Result<Graph> {
    let bad = || Error::Parse(format!("unknown graph description `{desc}`"));
    let (kind, arg) = desc.split_once(':').ok_or_else(bad)?;
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let pair = |sep: char| -> Result<(usize, usize)> {
        let (a, b) = arg.split_once(sep).ok_or_else(bad)?;
        Ok((num(a)?, num(b)?))
    };
    let g = match kind {
        "path" => path(num(arg)?.max(1)),
        "cycle" if num(arg)? >= 3 => cycle(num(arg)?),
        "grid" => {
            let (w, h) = pair('x')?;
            grid(w.max(1), h.max(1))
        }
        "comb" => {
            let (s, t) = pair('x')?;
            comb(s, t)
        }
        "spider" => {
            let (l, len) = pair('x')?;
            spider(l, len)
        }
        "star" => star(num(arg)?),
        "complete" => complete(num(arg)?.max(1)),
        "tree" => random_tree(num(arg)?.max(1), seed),
        "connected" => {
            let (n, extra) = pair('+')?;
            random_connected(n.max(1), extra, seed)
        }
        _ => return Err(bad()),
    };
    Ok(g)
}
