//! Minimal SVG drawings of polygons and weighted segments.

pub struct Canvas {
    lo: [f64; 2],
    hi: [f64; 2],
    items: Vec<String>,
}

const SIZE: f64 = 600.0;

impl Canvas {
    pub fn new(points: &[[f64; 2]]) -> Self {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        if !lo[0].is_finite() {
            (lo, hi) = ([0.0, 0.0], [1.0, 1.0]);
        }
        let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        Self { lo: [lo[0] - pad, lo[1] - pad], hi: [hi[0] + pad, hi[1] + pad], items: Vec::new() }
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let scale = SIZE / (self.hi[0] - self.lo[0]).max(self.hi[1] - self.lo[1]);
        ((p[0] - self.lo[0]) * scale, SIZE - (p[1] - self.lo[1]) * scale)
    }

    pub fn polygon(&mut self, v: &[[f64; 2]], stroke: &str, dashed: bool) {
        let pts: Vec<String> = v.iter().map(|&p| self.map(p)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let dash = if dashed { r#" stroke-dasharray="6 4""# } else { "" };
        self.items.push(format!(r#"<polygon points="{}" fill="none" stroke="{stroke}" stroke-width="1.5"{dash}/>"#, pts.join(" ")));
    }

    pub fn segment(&mut self, a: [f64; 2], b: [f64; 2], width: f64, stroke: &str) {
        let ((x1, y1), (x2, y2)) = (self.map(a), self.map(b));
        self.items.push(format!(r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{stroke}" stroke-width="{width}"/>"#));
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n{}\n</svg>\n",
            self.items.join("\n")
        )
    }
}
