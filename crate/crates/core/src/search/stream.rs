use std::io::BufRead;
use std::time::Instant;

use super::certificate::{finish, score, ExtremalCertificate, Mode, Pool, Provenance, SearchStats};
use super::SearchOptions;
use crate::error::{Error, Result};
use crate::graph::{graph6_decode, Graph, CANON_MAX_ORDER};
use crate::patterns::find_prism;

/// Scores a stream of graph6 lines, one graph per line, all of one order.
///
/// The stream is assumed to hold every graph of that order (or every
/// maximal free one); the certificate records this as an assumption.
/// Blank lines and a leading `>>graph6<<` marker are skipped.
pub fn ingest_graph6_stream<R: BufRead>(
    reader: R,
    k: usize,
    mode: Mode,
    opts: &SearchOptions,
) -> Result<ExtremalCertificate> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let start = Instant::now();
    let mut order = None;
    let mut pool = Pool::new(mode, opts.margin, 0.0);
    let mut stats = SearchStats::default();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| Error::StreamLine { line: line_no, message: e.to_string() })?;
        let mut text = line.trim_end_matches(['\r', '\n']);
        if let Some(rest) = text.strip_prefix(">>graph6<<") {
            text = rest;
        }
        if text.is_empty() {
            continue;
        }
        let g: Graph = graph6_decode(text.as_bytes())
            .map_err(|e| Error::StreamLine { line: line_no, message: e.to_string() })?;
        match order {
            None => order = Some(g.order()),
            Some(n) if n != g.order() => {
                return Err(Error::StreamLine {
                    line: line_no,
                    message: format!("order {} differs from the stream order {n}", g.order()),
                })
            }
            _ => {}
        }
        if g.order() > CANON_MAX_ORDER {
            return Err(Error::StreamLine {
                line: line_no,
                message: format!("order {} exceeds the canonical-form limit {CANON_MAX_ORDER}", g.order()),
            });
        }
        stats.nodes_expanded += 1;
        stats.graphs_tested += 1;
        if find_prism(&g, k)?.is_none() {
            stats.graphs_scored += 1;
            pool.offer(&g, score(&g, mode, opts)?);
        }
    }
    let n = order.ok_or(Error::NoGraphs)?;
    if pool.items.is_empty() {
        return Err(Error::NoGraphs);
    }
    stats.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    let assumptions = vec![
        "input stream is complete for its order".into(),
        "optimum taken over prism-free graphs in the stream only".into(),
    ];
    finish(n, k, &pool, opts, Provenance::Streamed, assumptions, stats)
}
