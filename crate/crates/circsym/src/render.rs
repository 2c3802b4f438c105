//! Text formats: DOT, CSV, markdown tables and plain text.

use std::fmt::Write as _;

use serde::Serialize;

use circsym_core::Graph;

use crate::dto::{ReportDto, VerifyDto};

pub const CSV_HEADER: &str = "n,i,j,arc,p,connected,twin_class,det,dist,cost,aut_order,method";

/// Sorted ascending, in braces: `{0,1,5}`.
pub fn set(items: &[usize]) -> String {
    let mut v = items.to_vec();
    v.sort_unstable();
    let body: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", body.join(","))
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

/// Undirected DOT with vertices in index order and edges sorted by index pair.
pub fn dot(name: &str, g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "graph {name:?} {{").unwrap();
    for label in g.labels() {
        writeln!(out, "  {label:?};").unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "  {:?} -- {:?};", g.label(a), g.label(b)).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("DTOs serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    i: usize,
    j: usize,
    arc: Option<&'a str>,
    p: Option<usize>,
    connected: bool,
    twin_class: &'a str,
    det: usize,
    dist: usize,
    cost: Option<usize>,
    aut_order: Option<u64>,
    method: &'a str,
}

pub fn csv(rows: &[ReportDto]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).unwrap();
    for r in rows {
        w.serialize(CsvRow {
            n: r.spec.n,
            i: r.spec.i,
            j: r.spec.j,
            arc: r.spec.arc.as_deref(),
            p: r.spec.p,
            connected: r.connected,
            twin_class: &r.twin_class,
            det: r.det,
            dist: r.dist,
            cost: r.cost,
            aut_order: r.aut_order,
            method: &r.method,
        })
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// One table per summary-table bucket, buckets in table order.
pub fn markdown(rows: &[ReportDto]) -> String {
    let mut sorted: Vec<&ReportDto> = rows.iter().collect();
    sorted.sort_by_key(|r| r.row);
    let mut out = String::new();
    let mut current = None;
    for r in sorted {
        if current != Some(r.row) {
            if current.is_some() {
                out.push('\n');
            }
            current = Some(r.row);
            writeln!(out, "### {} | {}\n", r.family, r.condition).unwrap();
            out.push_str("| graph | det | dist | ρ | condition | \\|Aut\\| |\n");
            out.push_str("|---|---|---|---|---|---|\n");
        }
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            r.spec.label,
            r.det,
            r.dist,
            opt(r.cost),
            r.condition,
            opt(r.aut_order)
        )
        .unwrap();
    }
    out
}

pub fn report_text(r: &ReportDto) -> String {
    let mut out = String::new();
    writeln!(out, "{}", r.spec.label).unwrap();
    writeln!(out, "row: {} | {}", r.family, r.condition).unwrap();
    writeln!(out, "det {} {}", r.det, set(&r.det_witness)).unwrap();
    writeln!(out, "dist {} colouring {:?}", r.dist, r.dist_witness).unwrap();
    match (&r.cost, &r.cost_witness) {
        (Some(c), Some(w)) => writeln!(out, "cost {c} {}", set(w)).unwrap(),
        _ => out.push_str("cost -\n"),
    }
    writeln!(out, "aut order {}", opt(r.aut_order)).unwrap();
    writeln!(out, "method {}", r.method).unwrap();
    out
}

pub fn table_text(rows: &[ReportDto]) -> String {
    let mut out = String::new();
    for r in rows {
        writeln!(out, "{:<22} det {:<3} dist {:<3} cost {:<3} order {}", r.spec.label, r.det, r.dist, opt(r.cost), opt(r.aut_order))
            .unwrap();
    }
    out
}

fn triple(t: &[Option<usize>; 3]) -> String {
    format!("({},{},{})", opt(t[0]), opt(t[1]), opt(t[2]))
}

pub fn verify_line(v: &VerifyDto) -> String {
    let mut line = format!(
        "{:<22} group {} {}/{}  params {} {}",
        v.spec.label,
        v.group_status,
        v.closed_order,
        opt(v.brute_order),
        v.params_status,
        triple(&v.closed)
    );
    if let Some(s) = &v.search {
        write!(line, " search {}", triple(s)).unwrap();
    }
    for d in [&v.group_detail, &v.params_detail].into_iter().flatten() {
        write!(line, "\n    {d}").unwrap();
    }
    line
}

pub fn verify_csv(rows: &[VerifyDto]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["spec", "group_status", "closed_order", "brute_order", "params_status", "closed", "search"]).unwrap();
    for v in rows {
        w.write_record([
            v.spec.label.clone(),
            v.group_status.clone(),
            v.closed_order.to_string(),
            v.brute_order.map(|o| o.to_string()).unwrap_or_default(),
            v.params_status.clone(),
            triple(&v.closed),
            v.search.as_ref().map(triple).unwrap_or_default(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use circsym_core::circulant::build;
    use circsym_core::CirculantSpec;

    #[test]
    fn dot_is_sorted_and_stable() {
        let g = build(&CirculantSpec::new(5, 1, 2).unwrap());
        let d = dot("C_5(1,2)", &g);
        assert!(d.starts_with("graph \"C_5(1,2)\" {\n  \"0\";\n"));
        assert!(d.contains("  \"0\" -- \"1\";\n  \"0\" -- \"2\";\n"));
        assert_eq!(d.matches(" -- ").count(), 10);
        assert_eq!(d, dot("C_5(1,2)", &g));
    }

    #[test]
    fn set_rendering() {
        assert_eq!(set(&[5, 0, 1]), "{0,1,5}");
        assert_eq!(set(&[]), "{}");
    }
}
