//! Plain-text exports: OBJ meshes and CSV tables.

use std::io::{self, Write};

use super::nodal::{ComponentKind, NodalComponent};
use crate::grid::EvaluationGrid;

/// Components as one OBJ file, one object `component_<i>` each; surfaces
/// as faces, curves as lines.
pub fn write_obj<W: Write>(components: &[NodalComponent], mut w: W) -> io::Result<()> {
    let mut offset = 1;
    for (i, c) in components.iter().enumerate() {
        writeln!(w, "o component_{i}")?;
        for v in &c.vertices {
            let z = v.get(2).copied().unwrap_or(0.0);
            writeln!(w, "v {} {} {}", v[0], v[1], z)?;
        }
        let tag = match c.kind {
            ComponentKind::Surface => "f",
            ComponentKind::Curve => "l",
        };
        for cell in &c.cells {
            write!(w, "{tag}")?;
            for &v in cell {
                write!(w, " {}", v + offset)?;
            }
            writeln!(w)?;
        }
        offset += c.vertices.len();
    }
    Ok(())
}

/// `component,x1,..,xn` rows for all vertices.
pub fn write_vertices_csv<W: Write>(components: &[NodalComponent], mut w: W) -> io::Result<()> {
    let dim = components
        .iter()
        .find_map(|c| c.vertices.first())
        .map_or(3, |v| v.len());
    write!(w, "component")?;
    for d in 1..=dim {
        write!(w, ",x{d}")?;
    }
    writeln!(w)?;
    for (i, c) in components.iter().enumerate() {
        for v in &c.vertices {
            write!(w, "{i}")?;
            for x in v {
                write!(w, ",{x}")?;
            }
            writeln!(w)?;
        }
    }
    Ok(())
}

/// `x1,..,xn,psi1,..,psim` rows for the masked nodes of a grid.
pub fn write_grid_csv<W: Write>(grid: &EvaluationGrid, mut w: W) -> io::Result<()> {
    let spec = &grid.spec;
    let header: Vec<String> = (1..=spec.n)
        .map(|d| format!("x{d}"))
        .chain((1..=grid.components).map(|c| format!("psi{c}")))
        .collect();
    writeln!(w, "{}", header.join(","))?;
    let mut x = vec![0.0; spec.n];
    for idx in 0..spec.len() {
        if !spec.in_mask(idx) {
            continue;
        }
        spec.node_into(idx, &mut x);
        let row: Vec<String> = x
            .iter()
            .copied()
            .chain((0..grid.components).map(|c| grid.value(idx, c)))
            .map(|v| v.to_string())
            .collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::nodal_extract;
    use crate::grid::{scalar_field, GridSpec};

    #[test]
    fn obj_and_csv_shapes() {
        let spec = GridSpec::cube(3, 0.2, 0.1).unwrap();
        let grid = EvaluationGrid::sample(&spec, &scalar_field(3, |x: &[f64]| x[0] + 0.05)).unwrap();
        let comps = nodal_extract(&grid).unwrap();
        let mut obj = Vec::new();
        write_obj(&comps, &mut obj).unwrap();
        let text = String::from_utf8(obj).unwrap();
        let nv = text.lines().filter(|l| l.starts_with("v ")).count();
        let nf = text.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!(nv, comps[0].vertices.len());
        assert_eq!(nf, comps[0].cells.len());

        let mut csv = Vec::new();
        write_grid_csv(&grid, &mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert_eq!(text.lines().next().unwrap(), "x1,x2,x3,psi1");
        assert_eq!(text.lines().count(), 1 + 125);

        let mut csv = Vec::new();
        write_vertices_csv(&comps, &mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 1 + nv);
    }
}
