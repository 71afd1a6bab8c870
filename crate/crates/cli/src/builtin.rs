//! Instance loading. A token names a builtin (fig1, fig2, fig7[:Z],
//! fig8[:Z], pN, cN, kN, grid:RxC) or points at a file, parsed as JSON by
//! extension and as the text format otherwise.

use std::path::Path;

use ppcp_core::instances::{
    self, fig1_star, fig2_graph, fig4_k4_embedding, fig7_caterpillar, fig8_path, grid,
};
use ppcp_core::length::Length;
use ppcp_core::reduction::{embed_tiny_planar, GridEmbedding};
use ppcp_core::{Error, Result, WeightedGraph};

pub fn load_instance(token: &str) -> Result<WeightedGraph> {
    if let Some(g) = builtin(token)? {
        return Ok(g);
    }
    let path = Path::new(token);
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {token}: {e}")))?;
    let doc = if path
        .extension()
        .is_some_and(|x| x.eq_ignore_ascii_case("json"))
    {
        instances::parse_json(&text)?
    } else {
        instances::parse_text(&text)?
    };
    doc.to_graph()
}

pub fn load_embedding(token: &str) -> Result<GridEmbedding> {
    if token == "fig4" {
        return Ok(fig4_k4_embedding());
    }
    embed_tiny_planar(&load_instance(token)?)
}

fn builtin(token: &str) -> Result<Option<WeightedGraph>> {
    let (head, arg) = match token.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (token, None),
    };
    match head {
        "fig1" => {
            no_arg(head, arg)?;
            Ok(Some(fig1_star()))
        }
        "fig2" => {
            no_arg(head, arg)?;
            Ok(Some(fig2_graph()))
        }
        "fig7" => Ok(Some(fig7_caterpillar(&z_arg(arg, 2)?)?)),
        "fig8" => Ok(Some(fig8_path(&z_arg(arg, 4)?)?)),
        "grid" => {
            let (rows, cols) = sides(arg)?;
            Ok(Some(grid(rows, cols)?))
        }
        _ => family(head, arg),
    }
}

fn no_arg(head: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        Some(_) => Err(Error::invalid(format!("{head} takes no argument"))),
        None => Ok(()),
    }
}

fn z_arg(arg: Option<&str>, default: u64) -> Result<Length> {
    match arg {
        Some(a) => a.parse(),
        None => Ok(Length::from_int(default)),
    }
}

fn sides(arg: Option<&str>) -> Result<(usize, usize)> {
    let a = arg.ok_or_else(|| Error::invalid("grid needs sides, e.g. grid:3x4"))?;
    let (r, c) = a
        .split_once('x')
        .ok_or_else(|| Error::invalid(format!("bad grid sides {a:?}, expected RxC")))?;
    let side = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::invalid(format!("bad grid side {s:?}")))
    };
    Ok((side(r)?, side(c)?))
}

/// pN, cN, and kN families; anything else falls through to file loading.
fn family(head: &str, arg: Option<&str>) -> Result<Option<WeightedGraph>> {
    let Some(first) = head.chars().next() else {
        return Ok(None);
    };
    if !matches!(first, 'p' | 'c' | 'k') {
        return Ok(None);
    }
    let Ok(n) = head[1..].parse::<usize>() else {
        return Ok(None);
    };
    no_arg(head, arg)?;
    let g = match first {
        'p' => instances::path(n)?,
        'c' => instances::cycle(n)?,
        _ => complete(n)?,
    };
    Ok(Some(g))
}

fn complete(n: usize) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::invalid("a complete graph needs at least one vertex"));
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Ok(WeightedGraph::uniform(n, &edges)?.with_name(format!("k{n}")))
}
