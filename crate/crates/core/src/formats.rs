//! Plain-text matrix, group, partition and edge-list files, plus the JSON
//! code file. Files use 1-based point indices; everything is 0-based once
//! parsed.
//!
//! A matrix file is a header `kind rows cols [q]` followed by `rows` lines
//! of whitespace-separated integers. Several matrices may follow each other
//! in one file. Blank lines and `#` comments are ignored everywhere.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::code::SubspaceCode;
use crate::drg::{Graph, PermutationGroup};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldSpec};
use crate::linalg::{IntMatrix, MatrixFq};
use crate::scheme::EquitablePartition;
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Int,
    /// Entries in `{-1, 1}`.
    Pm1,
    /// Entries in `{-1, 0, 1}`.
    Zpm1,
    /// Field elements in `[0, q)`.
    Fq,
}

impl EntryKind {
    fn name(self) -> &'static str {
        match self {
            EntryKind::Int => "int",
            EntryKind::Pm1 => "pm1",
            EntryKind::Zpm1 => "zpm1",
            EntryKind::Fq => "fq",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixFile {
    Int { kind: EntryKind, matrix: IntMatrix },
    Fq(MatrixFq),
}

impl MatrixFile {
    pub fn int(matrix: IntMatrix) -> MatrixFile {
        MatrixFile::Int { kind: EntryKind::Int, matrix }
    }

    /// Picks the narrowest of `pm1`, `zpm1`, `int` that fits.
    pub fn tagged(matrix: IntMatrix) -> MatrixFile {
        let kind = if matrix.data().iter().all(|v| v.abs() == 1) {
            EntryKind::Pm1
        } else if matrix.data().iter().all(|v| v.abs() <= 1) {
            EntryKind::Zpm1
        } else {
            EntryKind::Int
        };
        MatrixFile::Int { kind, matrix }
    }

    pub fn kind(&self) -> EntryKind {
        match self {
            MatrixFile::Int { kind, .. } => *kind,
            MatrixFile::Fq(_) => EntryKind::Fq,
        }
    }

    pub fn as_int(&self) -> Result<&IntMatrix> {
        match self {
            MatrixFile::Int { matrix, .. } => Ok(matrix),
            MatrixFile::Fq(_) => Err(Error::InvalidSpec("expected an integer matrix, found fq".into())),
        }
    }

    pub fn into_int(self) -> Result<IntMatrix> {
        match self {
            MatrixFile::Int { matrix, .. } => Ok(matrix),
            MatrixFile::Fq(_) => Err(Error::InvalidSpec("expected an integer matrix, found fq".into())),
        }
    }

    /// An `fq` matrix as is, or an integer matrix reduced into `field`.
    pub fn to_fq(&self, field: &FieldSpec) -> Result<MatrixFq> {
        match self {
            MatrixFile::Int { matrix, .. } => Ok(matrix.reduce_mod(field)),
            MatrixFile::Fq(m) if m.field().same(field) => Ok(m.clone()),
            MatrixFile::Fq(_) => Err(Error::FieldMismatch),
        }
    }
}

/// Non-blank lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn ints<T: std::str::FromStr>(line: usize, l: &str) -> Result<Vec<T>> {
    l.split_whitespace()
        .map(|t| t.parse::<T>().map_err(|_| parse_err(line, format!("bad integer `{t}`"))))
        .collect()
}

/// `q = p^r` with `p` prime.
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    let p = (2..=q).find(|d| q % d == 0).ok_or(Error::NotPrime(q))?;
    let (mut rest, mut r) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidSpec(format!("{q} is not a prime power")));
    }
    FieldSpec::new(p, r)
}

/// Every matrix in the text, in order.
pub fn parse_matrices(text: &str) -> Result<Vec<MatrixFile>> {
    let mut lines = content_lines(text);
    let mut out = Vec::new();
    while let Some((ln, header)) = lines.next() {
        let tok: Vec<&str> = header.split_whitespace().collect();
        let kind = match tok[0] {
            "int" => EntryKind::Int,
            "pm1" => EntryKind::Pm1,
            "zpm1" => EntryKind::Zpm1,
            "fq" => EntryKind::Fq,
            other => return Err(parse_err(ln, format!("unknown matrix kind `{other}`"))),
        };
        let dims = ints::<usize>(ln, &tok[1..].join(" "))?;
        let (rows, cols, q) = match (kind, dims.as_slice()) {
            (EntryKind::Fq, [r, c, q]) => (*r, *c, Some(*q as u64)),
            (EntryKind::Fq, _) => return Err(parse_err(ln, "expected `fq rows cols q`")),
            (_, [r, c]) => (*r, *c, None),
            _ => return Err(parse_err(ln, format!("expected `{} rows cols`", kind.name()))),
        };
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (ln, l) = lines.next().ok_or_else(|| parse_err(ln, format!("expected {rows} rows")))?;
            let row = ints::<i64>(ln, l)?;
            if row.len() != cols {
                return Err(parse_err(ln, format!("expected {cols} entries, found {}", row.len())));
            }
            for v in &row {
                let ok = match kind {
                    EntryKind::Int => true,
                    EntryKind::Pm1 => v.abs() == 1,
                    EntryKind::Zpm1 => v.abs() <= 1,
                    EntryKind::Fq => *v >= 0 && (*v as u64) < q.unwrap_or(0),
                };
                if !ok {
                    return Err(parse_err(ln, format!("entry {v} not allowed in a {} matrix", kind.name())));
                }
            }
            data.extend(row);
        }
        out.push(match q {
            Some(q) => {
                let field = field_of_order(q)?;
                MatrixFile::Fq(MatrixFq::from_vec(&field, rows, cols, data.into_iter().map(|v| v as u32).collect())?)
            }
            None => MatrixFile::Int { kind, matrix: IntMatrix::from_vec(rows, cols, data)? },
        });
    }
    Ok(out)
}

/// Exactly one matrix.
pub fn parse_matrix(text: &str) -> Result<MatrixFile> {
    let mut all = parse_matrices(text)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        k => Err(parse_err(0, format!("expected one matrix, found {k}"))),
    }
}

pub fn write_matrix(m: &MatrixFile) -> String {
    let mut s = String::new();
    let (rows, cols, data): (usize, usize, Vec<String>) = match m {
        MatrixFile::Int { kind, matrix } => {
            let _ = writeln!(s, "{} {} {}", kind.name(), matrix.rows(), matrix.cols());
            (matrix.rows(), matrix.cols(), matrix.data().iter().map(i64::to_string).collect())
        }
        MatrixFile::Fq(matrix) => {
            let _ = writeln!(s, "fq {} {} {}", matrix.rows(), matrix.cols(), matrix.field().order());
            (matrix.rows(), matrix.cols(), matrix.data().iter().map(u32::to_string).collect())
        }
    };
    for r in 0..rows {
        let _ = writeln!(s, "{}", data[r * cols..(r + 1) * cols].join(" "));
    }
    s
}

pub fn write_matrices(ms: &[MatrixFile]) -> String {
    ms.iter().map(write_matrix).collect::<Vec<_>>().join("\n")
}

/// One generator per line, `g(1) ... g(n)`, 1-based.
pub fn parse_group(text: &str) -> Result<PermutationGroup> {
    let mut gens = Vec::new();
    let mut degree = None;
    for (ln, l) in content_lines(text) {
        let images = ints::<usize>(ln, l)?;
        if *degree.get_or_insert(images.len()) != images.len() {
            return Err(parse_err(ln, "generators have different degrees"));
        }
        let zero_based = images
            .iter()
            .map(|&x| x.checked_sub(1).ok_or_else(|| parse_err(ln, "indices are 1-based")))
            .collect::<Result<Vec<_>>>()?;
        gens.push(zero_based);
    }
    let degree = degree.ok_or_else(|| parse_err(0, "no generators"))?;
    PermutationGroup::new(degree, gens)
}

pub fn write_group(g: &PermutationGroup) -> String {
    g.generators()
        .iter()
        .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

/// One cell per line, 1-based.
pub fn parse_partition(text: &str, points: usize) -> Result<EquitablePartition> {
    let mut cells = Vec::new();
    for (ln, l) in content_lines(text) {
        let cell = ints::<usize>(ln, l)?
            .into_iter()
            .map(|x| x.checked_sub(1).ok_or_else(|| parse_err(ln, "indices are 1-based")))
            .collect::<Result<Vec<_>>>()?;
        cells.push(cell);
    }
    EquitablePartition::new(points, cells)
}

pub fn write_partition(p: &EquitablePartition) -> String {
    p.cells()
        .iter()
        .map(|c| c.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

/// `edges n` followed by 1-based pairs, or a 0/1 adjacency matrix file.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text).peekable();
    let Some(&(ln, first)) = lines.peek() else { return Err(parse_err(0, "empty graph file")) };
    let mut tok = first.split_whitespace();
    if tok.next() != Some("edges") {
        return Graph::from_adjacency(parse_matrix(text)?.into_int()?);
    }
    let n: usize = tok
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(ln, "expected `edges n`"))?;
    lines.next();
    let mut edges = Vec::new();
    for (ln, l) in lines {
        match ints::<usize>(ln, l)?.as_slice() {
            [u, v] if *u >= 1 && *v >= 1 => edges.push((u - 1, v - 1)),
            _ => return Err(parse_err(ln, "expected a 1-based pair `u v`")),
        }
    }
    Graph::from_edges(n, &edges)
}

pub fn write_edges(g: &Graph) -> String {
    let mut s = format!("edges {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{} {}", u + 1, v + 1);
    }
    s
}

/// JSON form of a subspace code: the field and the RREF basis of each codeword.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub field: FieldDescriptor,
    pub n: usize,
    pub codewords: Vec<Vec<Vec<u32>>>,
}

impl CodeFile {
    pub fn from_code(code: &SubspaceCode) -> CodeFile {
        CodeFile {
            field: code.field().descriptor(),
            n: code.ambient_dim(),
            codewords: code.codewords().iter().map(|c| c.basis().to_rows()).collect(),
        }
    }

    pub fn to_code(&self) -> Result<SubspaceCode> {
        let field = FieldSpec::from_descriptor(&self.field)?;
        let words = self
            .codewords
            .iter()
            .map(|rows| {
                for r in rows {
                    if r.len() != self.n {
                        return Err(Error::AmbientMismatch(self.n, r.len()));
                    }
                    for &v in r {
                        field.check(v as u64)?;
                    }
                }
                Subspace::span(&field, self.n, rows)
            })
            .collect::<Result<Vec<_>>>()?;
        SubspaceCode::new(words)
    }
}

pub fn code_to_json(code: &SubspaceCode) -> String {
    serde_json::to_string_pretty(&CodeFile::from_code(code)).expect("plain data")
}

pub fn code_from_json(text: &str) -> Result<SubspaceCode> {
    let file: CodeFile = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    file.to_code()
}

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drg::families;

    #[test]
    fn matrix_round_trips() {
        let text = "# a comment\npm1 2 2\n1 1\n\n1 -1   # trailing\nint 1 3\n0 5 -7\n";
        let ms = parse_matrices(text).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].kind(), EntryKind::Pm1);
        assert_eq!(parse_matrices(&write_matrices(&ms)).unwrap(), ms);
        let f4 = FieldSpec::new(2, 2).unwrap();
        let m = MatrixFile::Fq(MatrixFq::from_vec(&f4, 2, 2, vec![0, 1, 2, 3]).unwrap());
        assert_eq!(parse_matrix(&write_matrix(&m)).unwrap(), m);
    }

    #[test]
    fn matrix_errors() {
        assert!(matches!(parse_matrix("pm1 1 2\n1 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("fq 1 1 4\n4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("fq 1 1\n0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix("int 2 2\n1 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("real 1 1\n1\n"), Err(Error::Parse { .. })));
        assert!(field_of_order(6).is_err());
        assert_eq!(field_of_order(9).unwrap().r(), 2);
    }

    #[test]
    fn group_partition_graph_round_trips() {
        let g = parse_group("2 3 1 4\n1 2 4 3\n").unwrap();
        assert_eq!(g.generators()[0], vec![1, 2, 0, 3]);
        assert_eq!(parse_group(&write_group(&g)).unwrap(), g);
        assert!(parse_group("0 1\n").is_err());
        let p = parse_partition("1 2\n3 4\n", 4).unwrap();
        assert_eq!(parse_partition(&write_partition(&p), 4).unwrap(), p);
        assert!(parse_partition("1 2\n2 3 4\n", 4).is_err());
        let pet = families::petersen();
        assert_eq!(parse_graph(&write_edges(&pet)).unwrap().adjacency(), pet.adjacency());
        let adj = write_matrix(&MatrixFile::int(pet.adjacency().clone()));
        assert_eq!(parse_graph(&adj).unwrap().adjacency(), pet.adjacency());
    }

    #[test]
    fn code_json_round_trip() {
        let f = FieldSpec::new(3, 1).unwrap();
        let words = vec![
            Subspace::span(&f, 4, &[vec![1, 0, 2, 0], vec![0, 1, 0, 1]]).unwrap(),
            Subspace::span(&f, 4, &[vec![1, 1, 1, 0]]).unwrap(),
        ];
        let code = SubspaceCode::new(words).unwrap();
        assert_eq!(code_from_json(&code_to_json(&code)).unwrap(), code);
        assert!(code_from_json("{\"field\":1}").is_err());
    }
}
