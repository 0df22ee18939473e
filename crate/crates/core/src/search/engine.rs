use std::time::Instant;

use rayon::prelude::*;

use super::certificate::{finish, score, ExtremalCertificate, Mode, Pool, Provenance, SearchStats};
use super::{SearchOptions, ENUMERATION_CAP, UNPRUNED_CAP};
use crate::error::{Error, Result};
use crate::formulas::{ex_extremal_construction, ex_formula};
use crate::graph::{spex_candidate, Graph};
use crate::patterns::find_prism;

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut p = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            p.push((u, v));
        }
    }
    p
}

/// Upper bound on the spectral radius of any graph with `m` edges.
fn stanley_bound(m: usize) -> f64 {
    (-1.0 + (1.0 + 8.0 * m as f64).sqrt()) / 2.0
}

/// Collatz–Wielandt upper bound on the spectral radius of the graph with
/// adjacency bitmask rows `rows`; valid for any positive test vector.
fn cw_upper_bound(rows: &[u64]) -> f64 {
    let n = rows.len();
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    for _ in 0..24 {
        for i in 0..n {
            let mut s = x[i];
            let mut r = rows[i];
            while r != 0 {
                s += x[r.trailing_zeros() as usize];
                r &= r - 1;
            }
            y[i] = s;
        }
        let top = y.iter().cloned().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / top;
        }
    }
    let mut ub = 0.0f64;
    for i in 0..n {
        let mut s = 0.0;
        let mut r = rows[i];
        while r != 0 {
            s += x[r.trailing_zeros() as usize];
            r &= r - 1;
        }
        ub = ub.max(s / x[i]);
    }
    ub
}

fn check_args(n: usize, k: usize, cap: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "n = {n} exceeds the enumeration limit {cap}; stream graph6 input instead"
        )));
    }
    Ok(())
}

#[derive(Clone)]
struct Task {
    graph: Graph,
    idx: usize,
    voluntary: Vec<(usize, usize)>,
}

enum Sink<'v> {
    Visit(&'v mut dyn FnMut(&Graph)),
    Score(Pool),
    Split(usize, Vec<Task>),
}

struct Engine<'a, 'v> {
    k: usize,
    pairs: &'a [(usize, usize)],
    opts: &'a SearchOptions,
    stats: SearchStats,
    sink: Sink<'v>,
}

impl<'a, 'v> Engine<'a, 'v> {
    fn free(&mut self, g: &Graph) -> Result<bool> {
        self.stats.graphs_tested += 1;
        Ok(find_prism(g, self.k)?.is_none())
    }

    fn hopeless(&self, g: &Graph, idx: usize) -> bool {
        let Sink::Score(pool) = &self.sink else { return false };
        let reachable = g.edge_count() + (self.pairs.len() - idx);
        match pool.mode {
            Mode::Edges => (reachable as f64) < pool.best,
            Mode::Spectral => {
                let floor = pool.best - pool.margin;
                if stanley_bound(reachable) < floor {
                    return true;
                }
                let mut rows: Vec<u64> = (0..g.order()).map(|v| g.row(v)[0]).collect();
                for &(u, v) in &self.pairs[idx..] {
                    rows[u] |= 1 << v;
                    rows[v] |= 1 << u;
                }
                cw_upper_bound(&rows) < floor
            }
        }
    }

    fn leaf(&mut self, g: &mut Graph, voluntary: &[(usize, usize)]) -> Result<()> {
        for &(u, v) in voluntary {
            g.add_edge(u, v);
            let free = self.free(g)?;
            g.remove_edge(u, v);
            if free {
                return Ok(());
            }
        }
        match &mut self.sink {
            Sink::Visit(f) => f(g),
            Sink::Score(pool) => {
                self.stats.graphs_scored += 1;
                let value = score(g, pool.mode, self.opts)?;
                pool.offer(g, value);
            }
            Sink::Split(..) => unreachable!("split stops before leaves"),
        }
        Ok(())
    }

    fn dfs(&mut self, g: &mut Graph, idx: usize, voluntary: &mut Vec<(usize, usize)>) -> Result<()> {
        self.stats.nodes_expanded += 1;
        if let Some(cap) = self.opts.node_cap {
            if self.stats.nodes_expanded > cap {
                return Err(Error::BudgetExceeded(cap));
            }
        }
        if self.hopeless(g, idx) {
            return Ok(());
        }
        if let Sink::Split(depth, tasks) = &mut self.sink {
            if idx == *depth || idx == self.pairs.len() {
                tasks.push(Task { graph: g.clone(), idx, voluntary: voluntary.clone() });
                return Ok(());
            }
        }
        if idx == self.pairs.len() {
            return self.leaf(g, voluntary);
        }
        let (u, v) = self.pairs[idx];
        g.add_edge(u, v);
        let includable = self.free(g)?;
        if includable {
            self.dfs(g, idx + 1, voluntary)?;
            for &(a, b) in &self.pairs[idx + 1..] {
                g.add_edge(a, b);
            }
            let blockable = !self.free(g)?;
            for &(a, b) in &self.pairs[idx + 1..] {
                g.remove_edge(a, b);
            }
            g.remove_edge(u, v);
            if blockable {
                voluntary.push((u, v));
                self.dfs(g, idx + 1, voluntary)?;
                voluntary.pop();
            }
        } else {
            g.remove_edge(u, v);
            self.dfs(g, idx + 1, voluntary)?;
        }
        Ok(())
    }
}

/// Calls `visitor` once for every edge-maximal `C_{2k+1}^□`-free labeled
/// graph on `n ≤ 8` vertices, in lexicographic edge-mask order.
pub fn enumerate_maximal_free(
    n: usize,
    k: usize,
    opts: &SearchOptions,
    visitor: &mut dyn FnMut(&Graph),
) -> Result<SearchStats> {
    check_args(n, k, ENUMERATION_CAP)?;
    let pairs = all_pairs(n);
    let mut e = Engine { k, pairs: &pairs, opts, stats: SearchStats::default(), sink: Sink::Visit(visitor) };
    e.dfs(&mut Graph::empty(n), 0, &mut Vec::new())?;
    Ok(e.stats)
}

/// Objective value of a known free graph, used as the initial bound.
fn seed_bound(n: usize, k: usize, mode: Mode, opts: &SearchOptions) -> Result<f64> {
    let mut seeds = Vec::new();
    if n >= 2 {
        let f = ex_formula(n)?;
        seeds.push(ex_extremal_construction(n, f.argmax_na)?);
        seeds.push(spex_candidate(n)?);
    }
    let mut best = 0.0f64;
    for g in seeds {
        if find_prism(&g, k)?.is_none() {
            best = best.max(score(&g, mode, opts)?);
        }
    }
    Ok(best)
}

/// Branch-and-bound over maximal free graphs; ties are never pruned.
pub fn brute_force(n: usize, k: usize, mode: Mode, opts: &SearchOptions) -> Result<ExtremalCertificate> {
    check_args(n, k, ENUMERATION_CAP)?;
    let start = Instant::now();
    let pairs = all_pairs(n);
    let seed = seed_bound(n, k, mode, opts)?;
    let mut splitter = Engine {
        k,
        pairs: &pairs,
        opts,
        stats: SearchStats::default(),
        sink: Sink::Split(opts.split_depth.min(pairs.len()), Vec::new()),
    };
    splitter.dfs(&mut Graph::empty(n), 0, &mut Vec::new())?;
    let Sink::Split(_, tasks) = splitter.sink else { unreachable!() };
    let mut stats = splitter.stats;

    let results: Vec<Result<(Pool, SearchStats)>> = tasks
        .into_par_iter()
        .map(|mut t| {
            let mut e = Engine {
                k,
                pairs: &pairs,
                opts,
                stats: SearchStats::default(),
                sink: Sink::Score(Pool::new(mode, opts.margin, seed)),
            };
            // The task root was already counted by the splitter.
            e.stats.nodes_expanded = 0;
            e.dfs(&mut t.graph, t.idx, &mut t.voluntary)?;
            e.stats.nodes_expanded -= 1;
            let Sink::Score(pool) = e.sink else { unreachable!() };
            Ok((pool, e.stats))
        })
        .collect();

    let mut pool = Pool::new(mode, opts.margin, seed);
    for r in results {
        let (p, s) = r?;
        stats.absorb(&s);
        if let Some(cap) = opts.node_cap {
            if stats.nodes_expanded > cap {
                return Err(Error::BudgetExceeded(cap));
            }
        }
        pool = pool.merge(p);
    }
    if pool.items.is_empty() {
        return Err(Error::VerificationFailed("search found no graph reaching the seed bound".into()));
    }
    stats.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    let assumptions = vec![
        "labeled edge-mask backtracking over all free graphs; only edge-maximal graphs scored".into(),
        "objective is monotone under edge addition".into(),
        format!("spectral ties within {:e}", opts.margin),
    ];
    finish(n, k, &pool, opts, Provenance::Enumerated, assumptions, stats)
}

/// Exact `ex(n, C_{2k+1}^□)` with witnesses.
pub fn brute_force_ex(n: usize, k: usize, opts: &SearchOptions) -> Result<ExtremalCertificate> {
    brute_force(n, k, Mode::Edges, opts)
}

/// Exact `spex(n, C_{2k+1}^□)` with witnesses.
pub fn brute_force_spex(n: usize, k: usize, opts: &SearchOptions) -> Result<ExtremalCertificate> {
    brute_force(n, k, Mode::Spectral, opts)
}

/// Scores every one of the `2^(n(n−1)/2)` labeled graphs without pruning.
pub fn unpruned_scan(n: usize, k: usize, mode: Mode, opts: &SearchOptions) -> Result<ExtremalCertificate> {
    check_args(n, k, UNPRUNED_CAP)?;
    let start = Instant::now();
    let pairs = all_pairs(n);
    let total: u64 = 1 << pairs.len();
    let chunk = (total / 256).max(1);
    let results: Vec<Result<(Pool, SearchStats)>> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut pool = Pool::new(mode, opts.margin, 0.0);
            let mut stats = SearchStats::default();
            for mask in c * chunk..((c + 1) * chunk).min(total) {
                let mut g = Graph::empty(n);
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        g.add_edge(u, v);
                    }
                }
                stats.nodes_expanded += 1;
                stats.graphs_tested += 1;
                if find_prism(&g, k)?.is_none() {
                    stats.graphs_scored += 1;
                    pool.offer(&g, score(&g, mode, opts)?);
                }
            }
            Ok((pool, stats))
        })
        .collect();
    let mut pool = Pool::new(mode, opts.margin, 0.0);
    let mut stats = SearchStats::default();
    for r in results {
        let (p, s) = r?;
        stats.absorb(&s);
        pool = pool.merge(p);
    }
    stats.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    let assumptions = vec!["every labeled graph scored, no pruning".into()];
    finish(n, k, &pool, opts, Provenance::Unpruned, assumptions, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn maximal_free_by_scan(n: usize, k: usize) -> BTreeSet<Vec<(usize, usize)>> {
        let pairs = all_pairs(n);
        let mut out = BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            let mut g = Graph::empty(n);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            if find_prism(&g, k).unwrap().is_some() {
                continue;
            }
            let maximal = pairs.iter().all(|&(u, v)| {
                if g.has_edge(u, v) {
                    return true;
                }
                let mut h = g.clone();
                h.add_edge(u, v);
                find_prism(&h, k).unwrap().is_some()
            });
            if maximal {
                out.insert(g.edges().as_slice().to_vec());
            }
        }
        out
    }

    #[test]
    fn enumerates_exactly_the_maximal_free_graphs() {
        let expected = maximal_free_by_scan(6, 1);
        let mut seen = Vec::new();
        enumerate_maximal_free(6, 1, &SearchOptions::default(), &mut |g| {
            seen.push(g.edges().as_slice().to_vec())
        })
        .unwrap();
        let set: BTreeSet<_> = seen.iter().cloned().collect();
        assert_eq!(set.len(), seen.len(), "a graph was visited twice");
        assert_eq!(set, expected);
    }

    #[test]
    fn small_hosts_only_see_complete_graph() {
        let mut seen = Vec::new();
        enumerate_maximal_free(5, 1, &SearchOptions::default(), &mut |g| seen.push(g.clone())).unwrap();
        assert_eq!(seen, vec![Graph::complete(5)]);
    }

    #[test]
    fn collatz_wielandt_bounds_radius() {
        for g in [Graph::complete(8), Graph::cycle(7).unwrap(), Graph::complete_bipartite(3, 5), Graph::path(6).unwrap()] {
            let rows: Vec<u64> = (0..g.order()).map(|v| g.row(v)[0]).collect();
            let lambda = crate::spectral::spectral_radius(&g, 1e-12).unwrap().radius;
            let ub = cw_upper_bound(&rows);
            assert!(ub >= lambda - 1e-12 && ub <= stanley_bound(g.edge_count()) + 1e-9, "{ub} {lambda}");
        }
    }

    #[test]
    fn cap_enforced() {
        let err = enumerate_maximal_free(9, 1, &SearchOptions::default(), &mut |_| {}).unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }

    #[test]
    fn node_budget() {
        let opts = SearchOptions { node_cap: Some(10), ..Default::default() };
        assert_eq!(brute_force_ex(7, 1, &opts).unwrap_err(), Error::BudgetExceeded(10));
    }

    #[test]
    fn ex_six() {
        let c = brute_force_ex(6, 1, &SearchOptions::default()).unwrap();
        assert_eq!(c.optimum.as_f64(), 12.0);
        assert!(c.formula_comparison.agrees);
        assert_eq!(c.construction_is_witness, Some(true));
        let u = unpruned_scan(6, 1, Mode::Edges, &SearchOptions::default()).unwrap();
        assert_eq!(u.witnesses, c.witnesses);
    }

    #[test]
    fn spex_six_matches_unpruned() {
        let c = brute_force_spex(6, 1, &SearchOptions::default()).unwrap();
        let u = unpruned_scan(6, 1, Mode::Spectral, &SearchOptions::default()).unwrap();
        assert_eq!(u.witnesses, c.witnesses);
        assert!((u.optimum.as_f64() - c.optimum.as_f64()).abs() < 1e-9);
    }
}
