//! Serialization of CLI results: complex literals, CSV rows, SVG paths,
//! and binary P6 pixmaps. All numeric output uses the shortest
//! round-trip decimal representation, so files are byte-stable across
//! runs and platforms.

use anyhow::{anyhow, bail, Result};
use lemniscate_maps::analysis::{Curve, PhaseGrid, Window};
use num_complex::Complex64;

/// Parse a complex literal: `1.5`, `i`, `-2i`, `1+2i`, `0.5-0.25i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        bail!("empty complex literal");
    }
    // re,im and re im pair forms
    if let Some((re, im)) = t.split_once(',') {
        return Ok(Complex64::new(re.parse()?, im.parse()?));
    }
    if !t.ends_with('i') && !t.ends_with('I') {
        return Ok(Complex64::new(
            t.parse().map_err(|_| anyhow!("bad real literal `{s}`"))?,
            0.0,
        ));
    }
    let body = &t[..t.len() - 1];
    // split into real part and imaginary coefficient at the last +/- that
    // is not an exponent sign
    let mut split = None;
    for (i, c) in body.char_indices().skip(1) {
        if (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E') {
            split = Some(i);
        }
    }
    let (re_str, im_str) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im_str {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other
            .parse()
            .map_err(|_| anyhow!("bad imaginary part in `{s}`"))?,
    };
    let re: f64 = re_str
        .parse()
        .map_err(|_| anyhow!("bad real part in `{s}`"))?;
    Ok(Complex64::new(re, im))
}

/// Parse a window: either `x0:x1,y0:y1` or a single half-extent `h`
/// meaning the square [-h, h] x [-h, h].
pub fn parse_window(s: &str) -> Result<Window> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((xs, ys)) = t.split_once(',') {
        let (x0, x1) = xs
            .split_once(':')
            .ok_or_else(|| anyhow!("window ranges use `lo:hi`"))?;
        let (y0, y1) = ys
            .split_once(':')
            .ok_or_else(|| anyhow!("window ranges use `lo:hi`"))?;
        return Window::new(x0.parse()?, x1.parse()?, y0.parse()?, y1.parse()?)
            .map_err(|e| anyhow!("{e}"));
    }
    let h: f64 = t.parse().map_err(|_| anyhow!("bad window `{s}`"))?;
    Window::square(h).map_err(|e| anyhow!("{e}"))
}

/// One CSV row of a point evaluation.
pub struct EvalRow {
    pub input: Complex64,
    pub output: Option<Complex64>,
    pub status: String,
}

pub fn write_csv(rows: &[EvalRow]) -> String {
    let mut out = String::from("re_in,im_in,re_out,im_out,status\n");
    for row in rows {
        match row.output {
            Some(w) => out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.input.re, row.input.im, w.re, w.im, row.status
            )),
            None => out.push_str(&format!(
                "{},{},,,{}\n",
                row.input.re, row.input.im, row.status
            )),
        }
    }
    out
}

/// SVG 1.1 document with one path per curve. The y axis is negated so the
/// picture is in the usual mathematical orientation; `side` annotates
/// whether a curve lives in the source plane or the image plane.
pub fn write_svg(curves: &[(String, Curve)], window: Window) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">\n",
        window.x0,
        -window.y1,
        window.width(),
        window.height()
    ));
    let stroke_width = window.width() / 400.0;
    for (side, curve) in curves {
        let mut d = String::new();
        for (i, p) in curve.points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            d.push_str(&format!("{cmd} {} {} ", p.re, -p.im));
        }
        if curve.closed {
            d.push('Z');
        }
        out.push_str(&format!(
            "  <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{stroke_width}\" \
             data-level=\"{}\" data-side=\"{side}\"/>\n",
            d.trim_end(),
            if side == "source" { "black" } else { "steelblue" },
            curve.level
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// Binary P6 pixmap of a phase portrait: hue encodes the argument,
/// flagged pixels are black. The sampling window rides along as a header
/// comment.
pub fn write_ppm(grid: &PhaseGrid) -> Vec<u8> {
    let w = grid.window;
    let mut out = format!(
        "P6\n# window {} {} {} {}\n{} {}\n255\n",
        w.x0, w.x1, w.y0, w.y1, grid.width, grid.height
    )
    .into_bytes();
    out.reserve(grid.width * grid.height * 3);
    for v in &grid.values {
        let rgb = match v {
            Some(w) => hue_rgb(w.arg()),
            None => [0, 0, 0],
        };
        out.extend_from_slice(&rgb);
    }
    out
}

/// Standard phase-portrait coloring: full-saturation hue wheel with red
/// at argument zero.
fn hue_rgb(arg: f64) -> [u8; 3] {
    let tau = std::f64::consts::TAU;
    let h = (arg.rem_euclid(tau)) / tau * 6.0;
    let sector = h.floor() as u32 % 6;
    let f = h - h.floor();
    let q = ((1.0 - f) * 255.0).round() as u8;
    let t = (f * 255.0).round() as u8;
    match sector {
        0 => [255, t, 0],
        1 => [q, 255, 0],
        2 => [0, 255, t],
        3 => [0, q, 255],
        4 => [t, 0, 255],
        _ => [255, 0, q],
    }
}
