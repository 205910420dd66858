//! Reading graphs, colorings and other inputs from files or stdin, while
//! recording every byte for the run digest.

use std::io::Read;
use std::path::Path;

use clap::ValueEnum;
use lincolor::io::{parse_dot, parse_edge_list, Bundle, ColoringDoc};
use lincolor::{Coloring, Graph};
use sha2::{Digest, Sha256};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `n m` header followed by one `u v` line per edge
    El,
    Dot,
    /// Graph bundle: `{"n", "edges", "coloring"?, "metadata"?}`
    Json,
}

/// Everything a run reads, hashed into the report digest.
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn new(args: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in args {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
        Inputs { hasher }
    }

    /// Reads `path`, or stdin for `None` and `-`.
    pub fn read(&mut self, path: Option<&Path>) -> Result<String, Failure> {
        let text = match path {
            Some(p) if p != Path::new("-") => std::fs::read_to_string(p)
                .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", p.display())))?,
            _ => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Invalid(format!("cannot read stdin: {e}")))?;
                s
            }
        };
        self.hasher.update(text.as_bytes());
        self.hasher.update([0]);
        Ok(text)
    }

    pub fn digest(&self) -> String {
        let bytes = self.hasher.clone().finalize();
        let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }
}

pub fn detect(path: Option<&Path>, text: &str) -> Format {
    match path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("json") => return Format::Json,
        Some("dot" | "gv") => return Format::Dot,
        Some("el") => return Format::El,
        _ => {}
    }
    let head = text.trim_start();
    if head.starts_with('{') {
        Format::Json
    } else if head.starts_with("graph") || head.starts_with("strict") {
        Format::Dot
    } else {
        Format::El
    }
}

/// A graph with whatever coloring and metadata its source carried.
pub struct Loaded {
    pub graph: Graph,
    pub coloring: Option<Coloring>,
    pub metadata: Option<serde_json::Value>,
}

pub fn parse_graph(text: &str, format: Format) -> Result<Loaded, Failure> {
    Ok(match format {
        Format::El => Loaded {
            graph: parse_edge_list(text)?,
            coloring: None,
            metadata: None,
        },
        Format::Dot => {
            let (graph, coloring) = parse_dot(text)?;
            Loaded {
                graph,
                coloring,
                metadata: None,
            }
        }
        Format::Json => {
            let b: Bundle = serde_json::from_str(text)
                .map_err(|e| Failure::Invalid(format!("bad graph JSON: {e}")))?;
            Loaded {
                graph: b.graph()?,
                coloring: b.coloring()?,
                metadata: b.metadata,
            }
        }
    })
}

/// `--graph` (or stdin), with `--coloring` overriding any embedded coloring.
pub fn load(
    inputs: &mut Inputs,
    graph: Option<&Path>,
    coloring: Option<&Path>,
) -> Result<Loaded, Failure> {
    let text = inputs.read(graph)?;
    let mut loaded = parse_graph(&text, detect(graph, &text))?;
    if let Some(path) = coloring {
        loaded.coloring = Some(read_coloring(inputs, path)?);
    }
    if let Some(c) = &loaded.coloring {
        if c.n() != loaded.graph.n() {
            return Err(Failure::Invalid(format!(
                "coloring has {} entries for a graph on {} vertices",
                c.n(),
                loaded.graph.n()
            )));
        }
    }
    Ok(loaded)
}

pub fn read_coloring(inputs: &mut Inputs, path: &Path) -> Result<Coloring, Failure> {
    let text = inputs.read(Some(path))?;
    let doc: ColoringDoc = serde_json::from_str(&text)
        .map_err(|e| Failure::Invalid(format!("bad coloring JSON in {}: {e}", path.display())))?;
    Ok(doc.to_coloring()?)
}

pub fn require_coloring(loaded: &Loaded) -> Result<&Coloring, Failure> {
    loaded.coloring.as_ref().ok_or_else(|| {
        Failure::Invalid("no coloring given (use --coloring or a bundle with colors)".into())
    })
}
