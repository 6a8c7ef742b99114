//! Browser bindings: classify a presentation, draw a simple's characteristic phantom
//! as SVG, and report the left finitistic dimension.

use std::fmt::Write as _;

use phantom_core::io::generalized_graph;
use phantom_core::phantom::{FindimValue, PhantomEngine};
use phantom_core::presentation::{parse_presentation, QuiverPresentation};
use phantom_core::serial::serial_findim;
use phantom_core::strings::LayeredGraph;
use wasm_bindgen::prelude::*;

const EXAMPLES: &[(&str, &str)] = &[
    ("example_f", include_str!("../../core/algebras/example_f.alg")),
    ("example_h", include_str!("../../core/algebras/example_h.alg")),
    ("example_e", include_str!("../../core/algebras/example_e.alg")),
    ("example_g", include_str!("../../core/algebras/example_g.alg")),
    ("lambda22", include_str!("../../core/algebras/lambda22.alg")),
];

fn load(dsl: &str) -> Result<QuiverPresentation, String> {
    parse_presentation(dsl).map_err(|e| e.to_string())
}

fn engine(p: &QuiverPresentation) -> Result<PhantomEngine<'_>, String> {
    if !p.classify().has_string_combinatorics {
        let kind = if p.classify().is_special_biserial { "special biserial" } else { "not special biserial" };
        return Err(format!("not a string algebra ({kind})"));
    }
    PhantomEngine::with_default_bound(p).map_err(|e| e.to_string())
}

pub fn classify_text(dsl: &str) -> Result<String, String> {
    let p = load(dsl)?;
    let c = p.classify();
    let yes = |b: bool| if b { "yes" } else { "no" };
    Ok(format!(
        "{}: {} vertices, {} arrows, dimension {}\nmonomial: {}\nspecial biserial: {}\nstring algebra: {}\nleft serial: {}\n",
        p.name,
        p.vertex_count(),
        p.arrow_count(),
        p.dim(),
        yes(c.is_monomial),
        yes(c.is_special_biserial),
        yes(c.is_string || c.has_string_combinatorics),
        yes(c.is_left_serial)
    ))
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Nodes in reading order across, layers down; the anchor is boxed.
pub fn svg(g: &LayeredGraph, caption: &str, open: (bool, bool)) -> String {
    let (dx, dy, pad) = (44.0, 56.0, 36.0);
    let shift = if open.0 { 1.0 } else { 0.0 };
    let x = |i: usize| pad + (i as f64 + shift) * dx;
    let y = |l: usize| pad + 24.0 + l as f64 * dy;
    let cols = g.nodes.len() as f64 + shift + if open.1 { 1.0 } else { 0.0 };
    let width = 2.0 * pad + (cols - 1.0).max(0.0) * dx;
    let height = 2.0 * pad + 24.0 + (g.layer_count().max(1) - 1) as f64 * dy;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" font-family=\"serif\" font-size=\"16\">\n"
    );
    let _ = writeln!(s, "<text x=\"{pad}\" y=\"20\" font-size=\"13\">{}</text>", esc(caption));
    for e in &g.edges {
        let (a, b) = (&g.nodes[e.from], &g.nodes[e.to]);
        let _ = writeln!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#444\"><title>{}</title></line>",
            x(e.from),
            y(a.layer) + 6.0,
            x(e.to),
            y(b.layer) - 14.0,
            esc(&e.label)
        );
    }
    for (i, n) in g.nodes.iter().enumerate() {
        if g.anchor == Some(i) {
            let _ = writeln!(
                s,
                "<rect x=\"{}\" y=\"{}\" width=\"28\" height=\"24\" fill=\"none\" stroke=\"#b00\"/>",
                x(i) - 14.0,
                y(n.layer) - 18.0
            );
        }
        let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>", x(i), y(n.layer), esc(&n.label));
    }
    if open.0 {
        let _ = writeln!(s, "<text x=\"{pad}\" y=\"{}\" text-anchor=\"middle\">…</text>", y(0));
    }
    if open.1 {
        let _ = writeln!(s, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">…</text>", width - pad, y(0));
    }
    s.push_str("</svg>\n");
    s
}

pub fn phantom_svg_text(dsl: &str, vertex: &str, window: usize) -> Result<String, String> {
    let p = load(dsl)?;
    let v = p.quiver.vertex_id(vertex).ok_or_else(|| format!("unknown vertex `{vertex}`"))?;
    let mut eng = engine(&p)?;
    let r = eng.characteristic_phantom(v).map_err(|e| e.to_string())?;
    let caption = format!(
        "phantom of S{vertex}: {} after {} steps{}",
        if r.finite { "finite" } else { "infinite" },
        r.step_count,
        if r.finite { ", the minimal approximation" } else { ", no approximation" }
    );
    let g = generalized_graph(&p, &r.phantom, window);
    Ok(svg(&g, &caption, (r.phantom.left.is_some(), r.phantom.right.is_some())))
}

pub fn findim_text(dsl: &str) -> Result<String, String> {
    let p = load(dsl)?;
    let c = p.classify();
    if !c.has_string_combinatorics && c.is_left_serial {
        let (d, _) = serial_findim(&p).map_err(|e| e.to_string())?;
        return Ok(format!("left finitistic dimension {d}\n"));
    }
    let report = engine(&p)?.findim_report(6).map_err(|e| e.to_string())?;
    let mut s = match report.lfindim {
        FindimValue::Exact(n) => format!("left finitistic dimension {n}\n"),
        FindimValue::LowerBound { value, letters } => {
            format!("left finitistic dimension at least {value} (strings up to {letters} letters)\n")
        }
    };
    for r in &report.simples {
        let kind = if r.phantom.finite { "finite" } else { "infinite" };
        let _ = writeln!(s, "S{}: {kind} phantom", p.vertex_name(r.vertex));
    }
    Ok(s)
}

#[wasm_bindgen]
pub fn classify(dsl: &str) -> Result<String, JsValue> {
    classify_text(dsl).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn phantom_svg(dsl: &str, vertex: &str, window: usize) -> Result<String, JsValue> {
    phantom_svg_text(dsl, vertex, window).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn findim(dsl: &str) -> Result<String, JsValue> {
    findim_text(dsl).map_err(|e| JsValue::from_str(&e))
}

/// Presentation text of a bundled example.
#[wasm_bindgen]
pub fn example(name: &str) -> Option<String> {
    EXAMPLES.iter().find(|(n, _)| *n == name).map(|(_, t)| t.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operations_on_examples() {
        let f = example("example_f").unwrap();
        assert!(classify_text(&f).unwrap().contains("string algebra: yes"));
        let svg = phantom_svg_text(&f, "1", 2).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("infinite"));
        assert!(findim_text(&example("example_e").unwrap()).unwrap().starts_with("left finitistic dimension 3"));
        assert!(findim_text(&example("lambda22").unwrap()).unwrap().starts_with("left finitistic dimension 0"));
        assert_eq!(phantom_svg_text(&example("example_g").unwrap(), "1", 2).unwrap_err(), "not a string algebra (special biserial)");
    }
}
