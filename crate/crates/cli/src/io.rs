//! Edge-list text format.
//!
//! ```text
//! # comment lines start with '#'
//! n 3
//! 1 2 1
//! 2 3 0.5
//! ```

use std::fmt::Write as _;
use std::path::Path;

use dampwalk::{GraphBuilder, GraphError, WeightedGraph};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("missing header line `n <count>`")]
    MissingHeader,
    #[error("malformed header `{0}`, expected `n <count>`")]
    BadHeader(String),
    #[error("malformed edge line `{0}`, expected `<u> <v> <w>`")]
    BadEdge(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A parse failure, with the 1-based line it was detected on when there is one.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
}

pub fn parse_edge_list(text: &str) -> Result<WeightedGraph, ParseError> {
    let at = |line: usize| move |kind: ParseErrorKind| ParseError { line: Some(line), kind };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError {
        line: None,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", count] => count
            .parse::<usize>()
            .map_err(|_| at(header_line)(ParseErrorKind::BadHeader(header.to_string())))?,
        _ => return Err(at(header_line)(ParseErrorKind::BadHeader(header.to_string()))),
    };

    let mut builder = GraphBuilder::new(n);
    for (line, content) in lines {
        let bad = || at(line)(ParseErrorKind::BadEdge(content.to_string()));
        let (u, v, w) = match content.split_whitespace().collect::<Vec<_>>()[..] {
            [u, v, w] => (
                u.parse::<usize>().map_err(|_| bad())?,
                v.parse::<usize>().map_err(|_| bad())?,
                w.parse::<f64>().map_err(|_| bad())?,
            ),
            _ => return Err(bad()),
        };
        builder.add_edge(u, v, w).map_err(|e| at(line)(e.into()))?;
    }
    builder.build().map_err(|e| ParseError {
        line: None,
        kind: e.into(),
    })
}

/// Writes `g` so that [`parse_edge_list`] returns an equal graph.
pub fn to_edge_list(g: &WeightedGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for e in g.edges() {
        let (u, v) = e.endpoints();
        // `{}` prints the shortest string that parses back to the same f64
        let _ = writeln!(out, "{u} {v} {}", e.weight);
    }
    out
}

pub fn read_graph(path: &Path) -> Result<WeightedGraph, ReadError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ReadError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_edge_list(&text).map_err(|source| ReadError::Parse { path: shown, source })
}
