//! Text formats: the polynomial grammar, matrix blocks, and the headered
//! form / unitary / Pauli files, with line/column diagnostics on parse errors
//! and printers satisfying parse ∘ print = id.
//!
//! Polynomial grammar:
//! `poly := term (('+'|'-') term)*`,
//! `term := coeff ('*' varpow)* | varpow ('*' varpow)*`,
//! `varpow := NAME ('^' SIGNED_INT)?`, coefficients decimal residues.
//! Matrix blocks: rows separated by `;` or newline, entries by `,`.

use crate::error::{Error, Result};
use crate::forms::{Form, FormKind};
use crate::matrix::Mat;
use crate::ring::{Poly, RingCtx};
use crate::unitary::{Flavor, PauliFactor, PauliKind, PauliSpec, Unitary};

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    /// Column of `src[0]` within its line (1-based).
    col0: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str, line: usize, col0: usize) -> Self {
        Scanner { src: src.as_bytes(), pos: 0, line, col0 }
    }

    fn col(&self) -> usize {
        self.col0 + self.pos
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().map_or(false, &pred) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice")
    }

    fn integer(&mut self, what: &str) -> Result<i64> {
        let neg = self.eat(b'-');
        let col = self.col();
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(perr(self.line, col, format!("expected {what}")));
        }
        let v: i64 = digits
            .parse()
            .map_err(|_| perr(self.line, col, format!("{what} out of range: `{digits}`")))?;
        Ok(if neg { -v } else { v })
    }
}

fn is_name_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_name_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

/// Parse one polynomial; `line`/`col0` locate the text within a larger file
/// for diagnostics.
fn parse_poly_at(ctx: &RingCtx, text: &str, line: usize, col0: usize) -> Result<Poly> {
    let p = ctx.p;
    let nv = ctx.nvars();
    let mut sc = Scanner::new(text, line, col0);
    let mut out = Poly::zero(p, nv);
    sc.skip_ws();
    if sc.peek().is_none() {
        return Err(perr(line, sc.col(), "empty polynomial"));
    }
    let mut sign: i64 = 1;
    if sc.eat(b'-') {
        sign = -1;
    } else {
        sc.eat(b'+');
    }
    loop {
        sc.skip_ws();
        // One term: optional coefficient, then varpow factors joined by '*'.
        let mut coeff: i64 = sign;
        let mut exps = vec![0i32; nv];
        if sc.peek().map_or(false, |c| c.is_ascii_digit()) {
            let col = sc.col();
            let digits = sc.take_while(|c| c.is_ascii_digit());
            let v: i64 = digits
                .parse()
                .map_err(|_| perr(line, col, format!("coefficient out of range: `{digits}`")))?;
            coeff = sign * v;
            sc.skip_ws();
            if !sc.eat(b'*') {
                // A bare constant term.
                out = out.add(&Poly::constant(p, nv, coeff));
                sc.skip_ws();
                match sc.peek() {
                    None => break,
                    Some(b'+') => {
                        sc.pos += 1;
                        sign = 1;
                        continue;
                    }
                    Some(b'-') => {
                        sc.pos += 1;
                        sign = -1;
                        continue;
                    }
                    _ => return Err(perr(line, sc.col(), "expected `+`, `-` or end of entry")),
                }
            }
            sc.skip_ws();
        }
        // varpow ('*' varpow)*
        loop {
            let col = sc.col();
            if !sc.peek().map_or(false, is_name_start) {
                return Err(perr(line, col, "expected a variable name"));
            }
            let name = sc.take_while(is_name_char);
            let var = ctx
                .var_index(name)
                .map_err(|_| perr(line, col, format!("unknown variable `{name}`")))?;
            let e: i32 = if sc.eat(b'^') {
                sc.integer("an exponent")?
                    .try_into()
                    .map_err(|_| perr(line, sc.col(), "exponent out of range"))?
            } else {
                1
            };
            exps[var] += e;
            sc.skip_ws();
            if sc.eat(b'*') {
                sc.skip_ws();
                continue;
            }
            break;
        }
        out = out.add(&Poly::monomial(p, nv, &exps, coeff));
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(b'+') => {
                sc.pos += 1;
                sign = 1;
            }
            Some(b'-') => {
                sc.pos += 1;
                sign = -1;
            }
            Some(_) => return Err(perr(line, sc.col(), "expected `+`, `-` or end of entry")),
        }
    }
    Ok(out)
}

pub fn parse_poly(ctx: &RingCtx, text: &str) -> Result<Poly> {
    parse_poly_at(ctx, text, 1, 1)
}

/// Print in graded-lexicographic term order; coefficients as residues in
/// `0..p`, so no `-` separators are emitted.
pub fn print_poly(ctx: &RingCtx, f: &Poly) -> String {
    let mut terms: Vec<(Vec<i32>, u64)> = f.terms().map(|(e, c)| (e.clone(), c)).collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|a, b| {
        let da: i32 = a.0.iter().sum();
        let db: i32 = b.0.iter().sum();
        db.cmp(&da).then_with(|| b.0.cmp(&a.0))
    });
    let mut parts = Vec::with_capacity(terms.len());
    for (e, c) in &terms {
        let mut factors: Vec<String> = Vec::new();
        if *c != 1 || e.iter().all(|&x| x == 0) {
            factors.push(c.to_string());
        }
        for (v, &x) in e.iter().enumerate() {
            if x == 1 {
                factors.push(ctx.vars[v].clone());
            } else if x != 0 {
                factors.push(format!("{}^{}", ctx.vars[v], x));
            }
        }
        parts.push(factors.join("*"));
    }
    parts.join(" + ")
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Parse a matrix block: rows separated by `;` or newline, entries by `,`.
/// `line0` is the 1-based file line of the block's first line.
pub fn parse_matrix_at(ctx: &RingCtx, text: &str, line0: usize) -> Result<Mat> {
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    let mut width: Option<usize> = None;
    for (li, phys) in text.lines().enumerate() {
        let line_no = line0 + li;
        for seg in phys.split(';') {
            if seg.trim().is_empty() {
                continue;
            }
            let seg_start = seg.as_ptr() as usize - phys.as_ptr() as usize;
            let mut row = Vec::new();
            let mut off = 0usize;
            for entry in seg.split(',') {
                let lead = entry.len() - entry.trim_start().len();
                let col0 = seg_start + off + lead + 1;
                row.push(parse_poly_at(ctx, entry.trim(), line_no, col0)?);
                off += entry.len() + 1;
            }
            match width {
                None => width = Some(row.len()),
                Some(w) if w != row.len() => {
                    return Err(perr(
                        line_no,
                        1,
                        format!("row has {} entries, expected {w}", row.len()),
                    ));
                }
                _ => {}
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(Mat::zero(ctx.p, ctx.nvars(), 0, 0));
    }
    Ok(Mat::from_rows(ctx.p, ctx.nvars(), rows))
}

pub fn parse_matrix(ctx: &RingCtx, text: &str) -> Result<Mat> {
    parse_matrix_at(ctx, text, 1)
}

/// One row per line, entries separated by `, `.
pub fn print_matrix(ctx: &RingCtx, m: &Mat) -> String {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| print_poly(ctx, m.at(i, j)))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

// ---------------------------------------------------------------------------
// Headered files
// ---------------------------------------------------------------------------

/// Split a file into `key=value` header lines and the remaining body,
/// returning the body's starting line number.
fn split_header<'a>(
    text: &'a str,
    keys: &[&str],
) -> Result<(Vec<(String, String, usize)>, String, usize)> {
    let mut header = Vec::new();
    let mut body = String::new();
    let mut body_line = 0usize;
    let mut in_body = false;
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        if !in_body {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(eq) = t.find('=') {
                let key = t[..eq].trim();
                if keys.contains(&key) {
                    header.push((key.to_string(), t[eq + 1..].trim().to_string(), line_no));
                    continue;
                }
            }
            in_body = true;
            body_line = line_no;
        }
        body.push_str(line);
        body.push('\n');
    }
    Ok((header, body, body_line.max(1)))
}

fn header_get<'a>(
    header: &'a [(String, String, usize)],
    key: &str,
) -> Result<(&'a str, usize)> {
    header
        .iter()
        .find(|(k, _, _)| k == key)
        .map(|(_, v, l)| (v.as_str(), *l))
        .ok_or_else(|| perr(1, 1, format!("missing header line `{key}=`")))
}

fn parse_ctx(header: &[(String, String, usize)]) -> Result<RingCtx> {
    let (pv, pl) = header_get(header, "p")?;
    let p: u64 = pv.parse().map_err(|_| perr(pl, 1, format!("invalid prime `{pv}`")))?;
    let (vv, vl) = header_get(header, "vars")?;
    let vars: Vec<String> = if vv.is_empty() {
        Vec::new()
    } else {
        vv.split(',').map(|s| s.trim().to_string()).collect()
    };
    for v in &vars {
        if v.is_empty() || !is_name_start(v.as_bytes()[0]) || !v.bytes().all(is_name_char) {
            return Err(perr(vl, 1, format!("invalid variable name `{v}`")));
        }
    }
    RingCtx::new(p, vars).map_err(|e| perr(pl, 1, e.to_string()))
}

fn parse_sign(v: &str, line: usize) -> Result<i8> {
    match v {
        "+" => Ok(1),
        "-" => Ok(-1),
        _ => Err(perr(line, 1, format!("sign must be `+` or `-`, found `{v}`"))),
    }
}

/// Parse a form file: `p=`, `vars=`, `kind=quadratic|hermitian`, `sign=+|-`,
/// `dim=`, then the matrix block.
pub fn parse_form(text: &str) -> Result<(RingCtx, Form)> {
    let (header, body, body_line) =
        split_header(text, &["p", "vars", "kind", "sign", "dim"])?;
    let ctx = parse_ctx(&header)?;
    let (kv, kl) = header_get(&header, "kind")?;
    let kind = match kv {
        "quadratic" => FormKind::Quadratic,
        "hermitian" => FormKind::Hermitian,
        _ => return Err(perr(kl, 1, format!("kind must be quadratic or hermitian, found `{kv}`"))),
    };
    let (sv, sl) = header_get(&header, "sign")?;
    let sign = parse_sign(sv, sl)?;
    let (dv, dl) = header_get(&header, "dim")?;
    let dim: usize = dv.parse().map_err(|_| perr(dl, 1, format!("invalid dimension `{dv}`")))?;
    let mat = parse_matrix_at(&ctx, &body, body_line)?;
    if mat.rows() != dim || mat.cols() != dim {
        return Err(perr(
            body_line,
            1,
            format!("matrix is {}x{}, header says dim={dim}", mat.rows(), mat.cols()),
        ));
    }
    let form = match kind {
        FormKind::Quadratic => Form::quadratic(sign, mat)?,
        FormKind::Hermitian => Form::hermitian(sign, mat)?,
    };
    Ok((ctx, form))
}

pub fn print_form(ctx: &RingCtx, form: &Form) -> String {
    let kind = match form.kind {
        FormKind::Quadratic => "quadratic",
        FormKind::Hermitian => "hermitian",
    };
    let sign = if form.sign == 1 { "+" } else { "-" };
    format!(
        "p={}\nvars={}\nkind={kind}\nsign={sign}\ndim={}\n{}\n",
        ctx.p,
        ctx.vars.join(","),
        form.dim(),
        print_matrix(ctx, &form.mat)
    )
}

/// Parse a unitary file: `p=`, `vars=`, `kind=unitary`, `flavor=`, `q=`, then
/// the matrix block.  The flavor check runs on construction.
pub fn parse_unitary(text: &str) -> Result<(RingCtx, Unitary)> {
    let (header, body, body_line) =
        split_header(text, &["p", "vars", "kind", "flavor", "q"])?;
    let ctx = parse_ctx(&header)?;
    let (kv, kl) = header_get(&header, "kind")?;
    if kv != "unitary" {
        return Err(perr(kl, 1, format!("kind must be unitary, found `{kv}`")));
    }
    let (fv, fl) = header_get(&header, "flavor")?;
    let flavor = match fv {
        "lambda-" => Flavor::LAMBDA_MINUS,
        "lambda+" => Flavor::LAMBDA_PLUS,
        "eta-" => Flavor::ETA_MINUS,
        "eta+" => Flavor::ETA_PLUS,
        _ => {
            return Err(perr(
                fl,
                1,
                format!("flavor must be one of lambda-/lambda+/eta-/eta+, found `{fv}`"),
            ))
        }
    };
    let (qv, ql) = header_get(&header, "q")?;
    let q: usize = qv.parse().map_err(|_| perr(ql, 1, format!("invalid width `{qv}`")))?;
    let mat = parse_matrix_at(&ctx, &body, body_line)?;
    if mat.rows() != 2 * q || mat.cols() != 2 * q {
        return Err(perr(
            body_line,
            1,
            format!("matrix is {}x{}, header says q={q}", mat.rows(), mat.cols()),
        ));
    }
    let u = Unitary::new(mat, flavor)?;
    Ok((ctx, u))
}

pub fn print_unitary(ctx: &RingCtx, u: &Unitary) -> String {
    format!(
        "p={}\nvars={}\nkind=unitary\nflavor={}\nq={}\n{}\n",
        ctx.p,
        ctx.vars.join(","),
        u.flavor(),
        u.q(),
        print_matrix(ctx, u.mat())
    )
}

// ---------------------------------------------------------------------------
// Pauli files
// ---------------------------------------------------------------------------

/// Parse a Pauli file: `p=`, `dim=`, `q=`, then one line per generator image
/// `X<i> -> FACTOR*` / `Z<i> -> FACTOR*` with
/// `FACTOR := ('X'|'Z') INT '[' INT (',' INT)* ']' ('^' INT)?` and 1-based
/// generator indices.  All `2q` images must be present exactly once.
pub fn parse_pauli(text: &str) -> Result<PauliSpec> {
    let (header, body, body_line) = split_header(text, &["p", "dim", "q"])?;
    let (pv, pl) = header_get(&header, "p")?;
    let p: u64 = pv.parse().map_err(|_| perr(pl, 1, format!("invalid prime `{pv}`")))?;
    let (dv, dl) = header_get(&header, "dim")?;
    let dims: usize = dv.parse().map_err(|_| perr(dl, 1, format!("invalid dim `{dv}`")))?;
    let (qv, ql) = header_get(&header, "q")?;
    let q: usize = qv.parse().map_err(|_| perr(ql, 1, format!("invalid width `{qv}`")))?;
    let mut images: Vec<Option<Vec<PauliFactor>>> = vec![None; 2 * q];
    for (li, line) in body.lines().enumerate() {
        let line_no = body_line + li;
        if line.trim().is_empty() {
            continue;
        }
        let mut sc = Scanner::new(line, line_no, 1);
        sc.skip_ws();
        let kind = match sc.peek() {
            Some(b'X') => PauliKind::X,
            Some(b'Z') => PauliKind::Z,
            _ => return Err(perr(line_no, sc.col(), "expected generator `X<i>` or `Z<i>`")),
        };
        sc.pos += 1;
        let gen = sc.integer("a generator index")?;
        if gen < 1 || gen as usize > q {
            return Err(perr(line_no, sc.col(), format!("generator index {gen} out of 1..={q}")));
        }
        let slot = match kind {
            PauliKind::X => gen as usize - 1,
            PauliKind::Z => q + gen as usize - 1,
        };
        if images[slot].is_some() {
            return Err(perr(line_no, 1, "duplicate generator image"));
        }
        sc.skip_ws();
        if !(sc.eat(b'-') && sc.eat(b'>')) {
            return Err(perr(line_no, sc.col(), "expected `->`"));
        }
        let mut word = Vec::new();
        loop {
            sc.skip_ws();
            let fkind = match sc.peek() {
                None => break,
                Some(b'X') => PauliKind::X,
                Some(b'Z') => PauliKind::Z,
                _ => return Err(perr(line_no, sc.col(), "expected a factor `X…` or `Z…`")),
            };
            sc.pos += 1;
            let fgen = sc.integer("a generator index")? as usize;
            if !sc.eat(b'[') {
                return Err(perr(line_no, sc.col(), "expected `[`"));
            }
            let mut offset = Vec::new();
            loop {
                sc.skip_ws();
                offset.push(
                    sc.integer("an offset")?
                        .try_into()
                        .map_err(|_| perr(line_no, sc.col(), "offset out of range"))?,
                );
                sc.skip_ws();
                if sc.eat(b',') {
                    continue;
                }
                break;
            }
            if !sc.eat(b']') {
                return Err(perr(line_no, sc.col(), "expected `]`"));
            }
            if offset.len() != dims {
                return Err(perr(
                    line_no,
                    sc.col(),
                    format!("offset has {} coordinates, expected {dims}", offset.len()),
                ));
            }
            let power = if sc.eat(b'^') { sc.integer("a power")? } else { 1 };
            word.push(PauliFactor { kind: fkind, gen: fgen, offset, power });
        }
        images[slot] = Some(word);
    }
    let images: Vec<Vec<PauliFactor>> = images
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            w.ok_or_else(|| {
                let (k, g) = if i < q { ("X", i + 1) } else { ("Z", i - q + 1) };
                perr(body_line, 1, format!("missing image line for {k}{g}"))
            })
        })
        .collect::<Result<_>>()?;
    Ok(PauliSpec { p, dims, q, images })
}

pub fn print_pauli(spec: &PauliSpec) -> String {
    let mut out = format!("p={}\ndim={}\nq={}\n", spec.p, spec.dims, spec.q);
    for (i, word) in spec.images.iter().enumerate() {
        let (k, g) = if i < spec.q { ("X", i + 1) } else { ("Z", i - spec.q + 1) };
        let factors = word
            .iter()
            .map(|f| {
                let kind = match f.kind {
                    PauliKind::X => "X",
                    PauliKind::Z => "Z",
                };
                let off = f
                    .offset
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                if f.power == 1 {
                    format!("{kind}{}[{off}]", f.gen)
                } else {
                    format!("{kind}{}[{off}]^{}", f.gen, f.power)
                }
            })
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("{k}{g} -> {factors}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::{pauli_to_unitary, unitary_to_pauli};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx1(p: u64) -> RingCtx {
        RingCtx::new(p, vec!["z".into()]).unwrap()
    }

    #[test]
    fn poly_grammar_examples() {
        let ctx = RingCtx::new(5, vec!["x".into(), "z".into()]).unwrap();
        let f = parse_poly(&ctx, "2*x^-1*z^3 + 1").unwrap();
        assert_eq!(f, Poly::monomial(5, 2, &[-1, 3], 2).add(&Poly::one(5, 2)));
        let g = parse_poly(&ctx, "z + z^-1").unwrap();
        assert_eq!(
            g,
            Poly::monomial(5, 2, &[0, 1], 1).add(&Poly::monomial(5, 2, &[0, -1], 1))
        );
        // Subtraction, repeated factors, a bare constant.
        assert_eq!(parse_poly(&ctx, "3 - 2").unwrap(), Poly::one(5, 2));
        assert_eq!(
            parse_poly(&ctx, "x*x^2").unwrap(),
            Poly::monomial(5, 2, &[3, 0], 1)
        );
        assert_eq!(parse_poly(&ctx, "0").unwrap(), Poly::zero(5, 2));
        assert_eq!(parse_poly(&ctx, "-x").unwrap(), Poly::monomial(5, 2, &[1, 0], 4));
    }

    #[test]
    fn poly_errors_carry_positions() {
        let ctx = ctx1(3);
        match parse_poly(&ctx, "z + y") {
            Err(Error::Parse { line: 1, col: 5, msg }) => assert!(msg.contains("y")),
            other => panic!("expected a position-carrying error, got {other:?}"),
        }
        assert!(parse_poly(&ctx, "z +").is_err());
        assert!(parse_poly(&ctx, "2**z").is_err());
        assert!(parse_poly(&ctx, "z^").is_err());
        assert!(parse_poly(&ctx, "").is_err());
    }

    #[test]
    fn poly_print_parse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let ctx = RingCtx::new(7, vec!["x".into(), "y".into()]).unwrap();
        for _ in 0..50 {
            let mut f = Poly::zero(7, 2);
            for _ in 0..rng.gen_range(0..5) {
                f = f.add(&Poly::monomial(
                    7,
                    2,
                    &[rng.gen_range(-3..=3), rng.gen_range(-3..=3)],
                    rng.gen_range(0..7),
                ));
            }
            let printed = print_poly(&ctx, &f);
            assert_eq!(parse_poly(&ctx, &printed).unwrap(), f, "printed: {printed}");
        }
    }

    #[test]
    fn matrix_block_round_trip() {
        let ctx = ctx1(3);
        let m = parse_matrix(&ctx, "z, 1; 0, z^-1").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.at(0, 0), &Poly::var(3, 1, 0));
        // Newlines work like `;`.
        let m2 = parse_matrix(&ctx, "z, 1\n0, z^-1").unwrap();
        assert_eq!(m, m2);
        assert_eq!(parse_matrix(&ctx, &print_matrix(&ctx, &m)).unwrap(), m);
        // Ragged rows rejected with the offending line.
        match parse_matrix(&ctx, "z, 1\n0") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected a ragged-row error, got {other:?}"),
        }
    }

    #[test]
    fn form_file_round_trip() {
        let text = "p=2\nvars=\nkind=quadratic\nsign=-\ndim=2\n1, 1\n0, 1\n";
        let (ctx, form) = parse_form(text).unwrap();
        assert_eq!(form.mat, Mat::from_ints(2, 0, &[&[1, 1], &[0, 1]]));
        assert_eq!(parse_form(&print_form(&ctx, &form)).unwrap().1.mat, form.mat);
        // Header/matrix disagreement located at the matrix block.
        let bad = "p=2\nvars=\nkind=quadratic\nsign=-\ndim=3\n1, 1\n0, 1\n";
        match parse_form(bad) {
            Err(Error::Parse { line: 6, .. }) => {}
            other => panic!("expected a dimension error, got {other:?}"),
        }
        // Hermitian validation kicks in after parsing.
        let herm = "p=3\nvars=z\nkind=hermitian\nsign=-\ndim=1\nz\n";
        assert!(parse_form(herm).is_err());
    }

    #[test]
    fn unitary_file_round_trip() {
        let text = "p=2\nvars=z\nkind=unitary\nflavor=eta-\nq=1\n\
                    z + z^-1, z + 1 + z^-1\nz + 1 + z^-1, z + z^-1\n";
        let (ctx, u) = parse_unitary(text).unwrap();
        assert_eq!(u.q(), 1);
        assert!(u.flavor().eta);
        let printed = print_unitary(&ctx, &u);
        let (_, u2) = parse_unitary(&printed).unwrap();
        assert_eq!(u.mat(), u2.mat());
        // A non-unitary matrix fails the flavor check (semantic, not parse).
        let bad = "p=2\nvars=z\nkind=unitary\nflavor=lambda-\nq=1\nz, 0\n0, 0\n";
        assert!(matches!(parse_unitary(bad), Err(Error::FlavorCheck(..))));
    }

    #[test]
    fn pauli_file_round_trip() {
        let text = "p=2\ndim=1\nq=1\nX1 -> X1[0] Z1[-1] Z1[1]\nZ1 -> Z1[0]\n";
        let spec = parse_pauli(text).unwrap();
        let u = pauli_to_unitary(&spec).unwrap();
        let back = unitary_to_pauli(&u);
        let printed = print_pauli(&back);
        assert_eq!(parse_pauli(&printed).unwrap(), back);
        // Missing image line.
        assert!(parse_pauli("p=2\ndim=1\nq=1\nX1 -> X1[0]\n").is_err());
        // Wrong offset arity.
        assert!(parse_pauli("p=2\ndim=2\nq=1\nX1 -> X1[0]\nZ1 -> Z1[0]\n").is_err());
    }
}
