//! Dendrogram persistence.
//!
//! JSON keeps the merge list verbatim. Newick encodes the tree with branch
//! length `parent height - child height` (leaves sit at height 0), so the
//! merge heights are recovered by summing branch lengths from the leaves.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cluster::{Dendrogram, Merge};
use crate::error::{Error, Result};
use crate::io::{fmt_real, write_text, DataFormat};

#[derive(Serialize, Deserialize)]
struct DendrogramDoc {
    labels: Vec<String>,
    merges: Vec<Merge>,
}

pub fn format_dendrogram_json(dend: &Dendrogram) -> Result<String> {
    let doc = DendrogramDoc {
        labels: dend.labels.clone(),
        merges: dend.merges.clone(),
    };
    serde_json::to_string_pretty(&doc)
        .map(|s| s + "\n")
        .map_err(|e| Error::Format(e.to_string()))
}

fn quote_label(label: &str) -> String {
    let plain = !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || "()[]',:;".contains(c));
    if plain {
        label.to_string()
    } else {
        format!("'{}'", label.replace('\'', "''"))
    }
}

pub fn format_dendrogram_newick(dend: &Dendrogram) -> Result<String> {
    dend.validate()?;
    let m = dend.leaf_count();
    let height = |id: usize| if id < m { 0.0 } else { dend.merges[id - m].height };

    fn node(dend: &Dendrogram, id: usize, m: usize, out: &mut String, height: &dyn Fn(usize) -> f64) {
        if id < m {
            out.push_str(&quote_label(&dend.labels[id]));
            return;
        }
        let mg = &dend.merges[id - m];
        out.push('(');
        for (i, child) in [mg.left, mg.right].into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            node(dend, child, m, out, height);
            out.push(':');
            out.push_str(&fmt_real(mg.height - height(child)));
        }
        out.push(')');
    }

    let mut out = String::new();
    node(dend, 2 * m - 2, m, &mut out, &height);
    out.push_str(";\n");
    Ok(out)
}

pub fn write_dendrogram(dend: &Dendrogram, path: impl AsRef<Path>, format: DataFormat) -> Result<()> {
    let text = match format {
        DataFormat::Json => format_dendrogram_json(dend)?,
        DataFormat::Newick => format_dendrogram_newick(dend)?,
        DataFormat::Csv => return Err(Error::InvalidArgument("dendrograms are written as json or newick".into())),
    };
    write_text(path.as_ref(), &text)
}

enum Node {
    Leaf(String),
    Inner(Vec<(Node, f64)>),
}

struct NewickParser<'a> {
    src: &'a [u8],
    pos: usize,
    origin: &'a Path,
}

impl<'a> NewickParser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        let line = 1 + self.src[..self.pos.min(self.src.len())].iter().filter(|&&b| b == b'\n').count();
        Error::parse(self.origin, line, format!("newick offset {}: {}", self.pos, msg.into()))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn label(&mut self) -> Result<String> {
        if self.peek() == Some(b'\'') {
            self.pos += 1;
            let mut out = Vec::new();
            loop {
                match self.src.get(self.pos) {
                    None => return Err(self.err("unterminated quoted label")),
                    Some(b'\'') if self.src.get(self.pos + 1) == Some(&b'\'') => {
                        out.push(b'\'');
                        self.pos += 2;
                    }
                    Some(b'\'') => {
                        self.pos += 1;
                        break;
                    }
                    Some(&b) => {
                        out.push(b);
                        self.pos += 1;
                    }
                }
            }
            return String::from_utf8(out).map_err(|_| self.err("label is not UTF-8"));
        }
        let start = self.pos;
        while let Some(&b) = self.src.get(self.pos) {
            if b"(),:;".contains(&b) || b.is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn length(&mut self) -> Result<f64> {
        self.expect(b':')?;
        self.skip_ws();
        let start = self.pos;
        while let Some(&b) = self.src.get(self.pos) {
            if b"(),:;".contains(&b) || b.is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
        let text = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        text.parse::<f64>().map_err(|_| self.err(format!("bad branch length '{text}'")))
    }

    fn node(&mut self) -> Result<Node> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut children = Vec::new();
            loop {
                let child = self.node()?;
                let len = self.length()?;
                children.push((child, len));
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
            // internal node names are ignored
            if !matches!(self.peek(), Some(b':') | Some(b';') | Some(b',') | Some(b')') | None) {
                self.label()?;
            }
            Ok(Node::Inner(children))
        } else {
            let label = self.label()?;
            if label.is_empty() {
                return Err(self.err("empty leaf label"));
            }
            Ok(Node::Leaf(label))
        }
    }
}

/// Rebuilds a dendrogram from Newick text. Leaves are numbered in order of
/// appearance; merges are ordered by height, children before parents.
pub fn parse_dendrogram_newick(text: &str, origin: &Path) -> Result<Dendrogram> {
    let mut parser = NewickParser {
        src: text.as_bytes(),
        pos: 0,
        origin,
    };
    let root = parser.node()?;
    parser.expect(b';')?;
    if parser.peek().is_some() {
        return Err(parser.err("trailing content after ';'"));
    }

    struct Inner {
        children: [usize; 2],
        height: f64,
    }
    let mut labels = Vec::new();
    let mut inner: Vec<Inner> = Vec::new();

    // returns (node ref, height); refs are leaf index or usize::MAX - inner index
    fn walk(node: &Node, labels: &mut Vec<String>, inner: &mut Vec<Inner>, parser: &NewickParser) -> Result<(usize, f64)> {
        match node {
            Node::Leaf(l) => {
                labels.push(l.clone());
                Ok((labels.len() - 1, 0.0))
            }
            Node::Inner(children) => {
                if children.len() != 2 {
                    return Err(parser.err(format!("expected a binary tree, found {} children", children.len())));
                }
                let mut refs = [0usize; 2];
                let mut height = 0.0f64;
                for (k, (child, len)) in children.iter().enumerate() {
                    let (r, h) = walk(child, labels, inner, parser)?;
                    refs[k] = r;
                    height = height.max(h + len);
                }
                inner.push(Inner { children: refs, height });
                Ok((usize::MAX - (inner.len() - 1), height))
            }
        }
    }
    walk(&root, &mut labels, &mut inner, &parser)?;
    let m = labels.len();
    if m < 2 {
        return Err(parser.err("tree needs at least 2 leaves"));
    }

    // post-order index breaks height ties so children precede parents
    let mut order: Vec<usize> = (0..inner.len()).collect();
    order.sort_by(|&a, &b| inner[a].height.total_cmp(&inner[b].height).then(a.cmp(&b)));
    let mut new_id = vec![0usize; inner.len()];
    for (s, &idx) in order.iter().enumerate() {
        new_id[idx] = m + s;
    }
    let resolve = |r: usize| if r < m { r } else { new_id[usize::MAX - r] };
    let mut sizes = vec![1usize; m];
    let mut merges = Vec::with_capacity(inner.len());
    for &idx in &order {
        let [a, b] = inner[idx].children.map(resolve);
        let (left, right) = (a.min(b), a.max(b));
        let size = sizes[left] + sizes[right];
        sizes.push(size);
        merges.push(Merge {
            left,
            right,
            height: inner[idx].height,
            size,
        });
    }
    let dend = Dendrogram { merges, labels };
    dend.validate()?;
    Ok(dend)
}

pub fn parse_dendrogram(text: &str, format: DataFormat, origin: &Path) -> Result<Dendrogram> {
    match format {
        DataFormat::Json => {
            let doc: DendrogramDoc = serde_json::from_str(text)
                .map_err(|e| Error::parse(origin, e.line(), e.to_string()))?;
            let dend = Dendrogram {
                labels: doc.labels,
                merges: doc.merges,
            };
            dend.validate()?;
            Ok(dend)
        }
        DataFormat::Newick => parse_dendrogram_newick(text, origin),
        DataFormat::Csv => Err(Error::InvalidArgument("dendrograms are read from json or newick".into())),
    }
}

pub fn read_dendrogram(path: impl AsRef<Path>, format: DataFormat) -> Result<Dendrogram> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_dendrogram(&text, format, path)
}
