use std::fmt::Write;

use sumtree::treebank::{Coloring, RootedTree};

const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2", "#edc948", "#ff9da7",
    "#9c755f", "#bab0ac",
];

pub fn color_fill(c: u64) -> &'static str {
    PALETTE[((c - 1) % PALETTE.len() as u64) as usize]
}

/// Layered drawing: leaves take consecutive slots in preorder and every
/// internal vertex sits midway between its outermost children.
pub fn render(tree: &RootedTree, coloring: &Coloring) -> String {
    let order = tree.preorder();
    let depths = tree.depths();
    let mut x = vec![0f64; tree.len()];
    let mut slot = 0f64;
    for &v in &order {
        if tree.children(v).is_empty() {
            x[v] = slot;
            slot += 1.0;
        }
    }
    for &v in order.iter().rev() {
        if let (Some(&a), Some(&b)) = (tree.children(v).first(), tree.children(v).last()) {
            x[v] = (x[a] + x[b]) / 2.0;
        }
    }

    let labels = tree.len() <= 200;
    let (dx, dy, r) = if labels {
        (28.0, 56.0, 11.0)
    } else {
        (8.0, 40.0, 3.5)
    };
    let pad = 2.0 * r;
    let height = depths.iter().max().copied().unwrap_or(0) as f64;
    let w = (slot - 1.0).max(0.0) * dx + 2.0 * pad;
    let h = height * dy + 2.0 * pad;
    let at = |v: usize| (pad + x[v] * dx, pad + depths[v] as f64 * dy);

    let mut s = String::new();
    let _ = write!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    s.push_str(r##"<g stroke="#888" stroke-width="1">"##);
    for (p, v) in tree.edges() {
        let ((x1, y1), (x2, y2)) = (at(p), at(v));
        let _ = write!(
            s,
            r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#
        );
    }
    s.push_str("</g><g>");
    for v in 0..tree.len() {
        let (cx, cy) = at(v);
        let c = coloring.get(v);
        let _ = write!(
            s,
            r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="{r}" fill="{}"><title>v{v} color {c}</title></circle>"#,
            color_fill(c)
        );
        if labels {
            let _ = write!(
                s,
                r##"<text x="{cx:.1}" y="{:.1}" font-size="11" text-anchor="middle" fill="#fff">{c}</text>"##,
                cy + 4.0
            );
        }
    }
    s.push_str("</g></svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_circle_per_vertex_and_one_line_per_edge() {
        let tree = RootedTree::from_parents(vec![None, Some(0), Some(0), Some(1)]).unwrap();
        let coloring = Coloring::new(vec![1, 2, 2, 1]).unwrap();
        let out = render(&tree, &coloring);
        assert_eq!(out.matches("<circle").count(), 4);
        assert_eq!(out.matches("<line").count(), 3);
        assert!(out.starts_with("<svg") && out.ends_with("</svg>"));
    }

    #[test]
    fn singleton_renders() {
        let out = render(&RootedTree::singleton(), &Coloring::new(vec![1]).unwrap());
        assert_eq!(out.matches("<circle").count(), 1);
    }
}
