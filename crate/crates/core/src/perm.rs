//! Permutations of `{0, .., m-1}` in one-line notation, with lexicographic
//! ranking. Composition is `(f·g)(i) = f(g(i))`: the right factor acts first.

pub const MAX_DEGREE: usize = 8;

pub fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// The `rank`-th permutation of degree `m` in lexicographic order.
pub fn unrank(m: usize, mut rank: usize) -> Vec<u8> {
    let mut pool: Vec<u8> = (0..m as u8).collect();
    let mut out = Vec::with_capacity(m);
    for i in (0..m).rev() {
        let f = factorial(i);
        let pos = rank / f;
        rank %= f;
        out.push(pool.remove(pos));
    }
    out
}

pub fn rank(p: &[u8]) -> usize {
    let m = p.len();
    let mut r = 0;
    for i in 0..m {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r += smaller * factorial(m - 1 - i);
    }
    r
}

pub fn compose(f: &[u8], g: &[u8]) -> Vec<u8> {
    g.iter().map(|&x| f[x as usize]).collect()
}

pub fn inverse(p: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

pub fn identity(m: usize) -> Vec<u8> {
    (0..m as u8).collect()
}

/// Transposition of the 0-based points `a` and `b`.
pub fn transposition(m: usize, a: usize, b: usize) -> Vec<u8> {
    let mut p = identity(m);
    p.swap(a, b);
    p
}

/// The cycle `c[0] -> c[1] -> ... -> c[0]` on 0-based points.
pub fn cycle(m: usize, c: &[usize]) -> Vec<u8> {
    let mut p = identity(m);
    for (i, &x) in c.iter().enumerate() {
        p[x] = c[(i + 1) % c.len()] as u8;
    }
    p
}

/// 1-based one-line notation, e.g. `[2 1 3]`.
pub fn one_line(p: &[u8]) -> String {
    let body: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
    format!("[{}]", body.join(" "))
}

/// 1-based disjoint cycle notation, `()` for the identity.
pub fn cycle_notation(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        let mut c = vec![start + 1];
        seen[start] = true;
        let mut x = p[start] as usize;
        while x != start {
            seen[x] = true;
            c.push(x + 1);
            x = p[x] as usize;
        }
        let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("({})", body.join(" ")));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
