//! Graph targets: an edge-list file or a family spec such as `rooks 3 5`.

use std::path::Path;

use anyhow::{bail, Context, Result};
use fracdef::graph::{self, Graph};

pub const FAMILIES: &str = "hajos | path N | cycle N | fan N | wheel N | complete N | multipartite S1 S2 .. | \
tripartite A B C | rooks M N | circulant N O1 O2 .. | cycle-blowup M";

fn numbers(name: &str, args: &[String]) -> Result<Vec<usize>> {
    args.iter()
        .map(|a| a.parse::<usize>().with_context(|| format!("{name}: parameter {a:?} is not a nonnegative integer")))
        .collect()
}

fn exactly<const N: usize>(name: &str, args: &[String]) -> Result<[usize; N]> {
    let v = numbers(name, args)?;
    v.try_into().map_err(|v: Vec<usize>| anyhow::anyhow!("{name} takes {N} parameter(s), got {}", v.len()))
}

/// Resolve `tokens` to a graph. A single token naming an existing file is
/// read as an edge list; anything else is a family spec.
pub fn resolve(tokens: &[String]) -> Result<Graph> {
    let Some((head, rest)) = tokens.split_first() else {
        bail!("missing graph: give an edge-list file or a family ({FAMILIES})");
    };
    if rest.is_empty() && Path::new(head).is_file() {
        let text = std::fs::read_to_string(head).with_context(|| format!("reading {head}"))?;
        let g = graph::read_graph(&text).with_context(|| format!("parsing graph file {head}"))?;
        return Ok(g.with_name(head.clone()));
    }
    let g = match head.as_str() {
        "hajos" => {
            exactly::<0>(head, rest)?;
            graph::hajos()
        }
        "path" => graph::path(exactly::<1>(head, rest)?[0])?,
        "cycle" => graph::cycle(exactly::<1>(head, rest)?[0])?,
        "fan" => graph::fan(exactly::<1>(head, rest)?[0])?,
        "wheel" => graph::wheel(exactly::<1>(head, rest)?[0])?,
        "complete" => graph::complete(exactly::<1>(head, rest)?[0])?,
        "multipartite" => graph::complete_multipartite(&numbers(head, rest)?)?,
        "tripartite" => graph::complete_multipartite(&exactly::<3>(head, rest)?)?,
        "rooks" => {
            let [m, n] = exactly::<2>(head, rest)?;
            graph::rooks(m, n)?
        }
        "circulant" => {
            let v = numbers(head, rest)?;
            let Some((&n, offsets)) = v.split_first() else {
                bail!("circulant takes N followed by offsets");
            };
            graph::circulant(n, offsets)?
        }
        "cycle-blowup" => {
            let m = exactly::<1>(head, rest)?[0];
            graph::composition_with_empty(&graph::cycle(m)?, 2)?
        }
        other => bail!("{other:?} is neither a file nor a known family ({FAMILIES})"),
    };
    Ok(g)
}
