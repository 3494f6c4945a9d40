use serde::Serialize;

use crate::setfn::{GroundSet, IntVec, Subset};

/// One recursion node. Vectors are local to the node and indexed like
/// `elements`; the splits are in original indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceNode {
    pub elements: Vec<usize>,
    /// Contracted set: the node's function is `X ↦ p(X ∪ base) − p(base)`.
    pub base: Subset,
    pub a: i64,
    /// Single-constraint start (Groenevelt) or local-search seed (Fujishige).
    pub x: IntVec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<IntVec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<IntVec>,
    /// Local-search moves `(s, t)` in original indices, applied in order.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub moves: Vec<(usize, usize)>,
    pub s_plus: Subset,
    pub s_minus: Subset,
    pub s_zero: Subset,
    pub output: IntVec,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TraceNode>,
}

impl TraceNode {
    pub fn element_set(&self) -> Subset {
        self.elements.iter().copied().collect()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Pre-order walk.
    pub fn nodes(&self) -> Vec<&TraceNode> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    /// Ground sets on which the recursion stopped, including the fixed `S₀` parts.
    pub fn final_parts(&self) -> Vec<Subset> {
        let mut out = Vec::new();
        self.collect_parts(&mut out);
        out
    }

    fn collect_parts(&self, out: &mut Vec<Subset>) {
        if self.children.is_empty() {
            out.push(self.element_set());
            return;
        }
        if !self.s_zero.is_empty() {
            out.push(self.s_zero);
        }
        for c in &self.children {
            c.collect_parts(out);
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    /// Indented text rendering.
    pub fn render(&self, ground: &GroundSet) -> String {
        let mut out = String::new();
        self.render_into(ground, 0, &mut out);
        out
    }

    fn render_into(&self, ground: &GroundSet, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        out.push_str(&format!(
            "{pad}node {} a={} x={:?}",
            ground.render(self.element_set()),
            self.a,
            self.x
        ));
        if let Some(y) = &self.y {
            out.push_str(&format!(" y={y:?}"));
        }
        if let Some(z) = &self.z {
            out.push_str(&format!(" z={z:?}"));
        }
        out.push('\n');
        if !self.moves.is_empty() {
            let moves: Vec<String> = self
                .moves
                .iter()
                .map(|&(s, t)| format!("+{} -{}", ground.names[s], ground.names[t]))
                .collect();
            out.push_str(&format!("{pad}  moves: {}\n", moves.join(", ")));
        }
        if !self.children.is_empty() || !self.s_zero.is_empty() {
            out.push_str(&format!(
                "{pad}  split S+={} S-={} S0={}\n",
                ground.render(self.s_plus),
                ground.render(self.s_minus),
                ground.render(self.s_zero)
            ));
        }
        out.push_str(&format!("{pad}  output {:?}\n", self.output));
        for c in &self.children {
            c.render_into(ground, indent + 1, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompTrace {
    pub algorithm: &'static str,
    pub root: TraceNode,
}
