//! Graph export: edge list, DOT and coordinate CSV.
//!
//! Vertex ids are positions in point order (x, then y); labels are canonical
//! words. Output depends only on the level, so it is byte-stable.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use carpet_core::{AdjacencyGraph, VertexTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Edges,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "edges" => Ok(ExportFormat::Edges),
            "csv" => Ok(ExportFormat::Csv),
            other => Err(format!("unknown export format {other:?}")),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Dot => "dot",
            ExportFormat::Edges => "edges",
            ExportFormat::Csv => "csv",
        })
    }
}

/// Graph plus canonical labels for one level.
pub struct Labelled<'a> {
    pub graph: &'a AdjacencyGraph,
    pub table: &'a VertexTable,
}

impl Labelled<'_> {
    fn label(&self, id: usize) -> String {
        self.table.vertices()[id].word.to_string()
    }
}

/// ```text
/// # carpet level 2: 16 vertices, 24 edges
/// # vertex <id> <x> <y> <word>
/// # vertex 0 0 0 a0
/// ...
/// 0 1
/// ```
pub fn write_edges<W: Write>(g: Labelled<'_>, out: &mut W) -> io::Result<()> {
    writeln!(
        out,
        "# carpet level {}: {} vertices, {} edges",
        g.graph.level(),
        g.graph.vertex_count(),
        g.graph.edge_count()
    )?;
    writeln!(out, "# vertex <id> <x> <y> <word>")?;
    for (id, p) in g.graph.points().iter().enumerate() {
        writeln!(out, "# vertex {id} {} {} {}", p.x, p.y, g.label(id))?;
    }
    for (u, v) in g.graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_dot<W: Write>(g: Labelled<'_>, out: &mut W) -> io::Result<()> {
    writeln!(out, "graph carpet_{} {{", g.graph.level())?;
    writeln!(out, "  node [shape=circle, fontsize=8];")?;
    for (id, p) in g.graph.points().iter().enumerate() {
        writeln!(out, "  {id} [label=\"{}\", pos=\"{},{}!\"];", g.label(id), p.x, p.y)?;
    }
    for (u, v) in g.graph.edges() {
        writeln!(out, "  {u} -- {v};")?;
    }
    writeln!(out, "}}")
}

pub fn write_csv<W: Write>(g: Labelled<'_>, out: &mut W) -> io::Result<()> {
    writeln!(out, "id,x,y,word")?;
    for (id, p) in g.graph.points().iter().enumerate() {
        writeln!(out, "{id},{},{},{}", p.x, p.y, g.label(id))?;
    }
    Ok(())
}

pub fn write_export<W: Write>(format: ExportFormat, g: Labelled<'_>, out: &mut W) -> io::Result<()> {
    match format {
        ExportFormat::Dot => write_dot(g, out),
        ExportFormat::Edges => write_edges(g, out),
        ExportFormat::Csv => write_csv(g, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(level: usize, format: ExportFormat) -> String {
        let graph = AdjacencyGraph::build(level).unwrap();
        let table = VertexTable::build(level).unwrap();
        let mut buf = Vec::new();
        write_export(format, Labelled { graph: &graph, table: &table }, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn cycle_as_dot() {
        let dot = render(1, ExportFormat::Dot);
        assert!(dot.starts_with("graph carpet_1 {"));
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert!(dot.contains("[label=\"c\", pos=\"1,1!\"]"));
    }

    #[test]
    fn edge_list_counts() {
        let text = render(2, ExportFormat::Edges);
        let edges = text.lines().filter(|l| !l.starts_with('#')).count();
        let vertices = text.lines().filter(|l| l.starts_with("# vertex ") && !l.contains('<')).count();
        assert_eq!((vertices, edges), (16, 24));
    }

    #[test]
    fn csv_rows() {
        assert_eq!(render(3, ExportFormat::Csv).lines().count(), 97);
    }
}
