#![allow(dead_code)]

use orbifold_vortex::{OrbifoldLineBundle, OrbifoldSurface};

/// Nondecreasing multiplicity lists of length `n` with product at most `max_product`.
pub fn multiplicity_lists(n: usize, max_product: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, start: u32, product: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut a = start;
        while product * a <= max {
            prefix.push(a);
            go(n - 1, a, product * a, max, prefix, out);
            prefix.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    go(n, 2, 1, max_product, &mut Vec::new(), &mut out);
    out
}

/// All surfaces with `g <= max_genus`, `n <= max_cone` and `prod a_i <= max_product`.
pub fn surfaces(max_genus: u32, max_cone: usize, max_product: u32) -> Vec<OrbifoldSurface> {
    let mut out = Vec::new();
    for g in 0..=max_genus {
        for n in 0..=max_cone {
            for cone in multiplicity_lists(n, max_product) {
                out.push(OrbifoldSurface::new(g, cone).unwrap());
            }
        }
    }
    out
}

/// Every isotropy vector `0 <= b_i < a_i`.
pub fn isotropy_vectors(surface: &OrbifoldSurface) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for &a in surface.multiplicities() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..a).map(move |b| {
                    let mut v = prefix.clone();
                    v.push(b);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn bundle(surface: &OrbifoldSurface, deg_b: i64, isotropy: &[u32]) -> OrbifoldLineBundle {
    OrbifoldLineBundle::new(surface.clone(), deg_b, isotropy.to_vec()).unwrap()
}

pub fn pairwise_coprime(cone: &[u32]) -> bool {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    cone.iter().enumerate().all(|(i, &a)| cone[i + 1..].iter().all(|&b| gcd(a, b) == 1))
}

/// CLI invocations with checked-in expected output under `tests/golden/`.
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("report_poincare.txt", &["report", "--genus", "0", "--cone", "2,3,5", "--det", "L0^1", "--format", "table"]),
    ("report_poincare.json", &["report", "--genus", "0", "--cone", "2,3,5", "--det", "L0^1", "--format", "json"]),
    ("report_poincare_post_quotient.txt", &["report", "--cone", "2,3,5", "--det", "L0", "--post-quotient"]),
    ("report_brieskorn.txt", &["report", "--genus", "0", "--cone", "2,3,7", "--det", "L0^5"]),
    ("report_brieskorn.json", &["report", "--genus", "0", "--cone", "2,3,7", "--det", "L0^5", "--format", "json"]),
    ("report_brieskorn_l0_cubed.txt", &["report", "--genus", "0", "--cone", "2,3,7", "--det", "L0^3"]),
    ("report_genus2_smooth.txt", &["report", "--genus", "2", "--det", "3"]),
    ("surface_237.txt", &["surface", "--genus", "0", "--cone", "2,3,7"]),
    ("surface_genus1_cone4.txt", &["surface", "--genus", "1", "--cone", "4"]),
    ("picard_237_5.txt", &["picard", "--genus", "0", "--cone", "2,3,7", "--power", "5"]),
    ("picard_235_neg1.txt", &["picard", "--cone", "2,3,5", "--power", "-1"]),
    ("rr_line_235.txt", &["rr", "--cone", "2,3,5", "--line", "L0^7"]),
    ("rr_u2_235.txt", &["rr", "--cone", "2,3,5", "--det", "L0", "--u2", "0:1,0:1,2:4"]),
    ("bundles_237_l0_cubed.txt", &["bundles", "--cone", "2,3,7", "--det", "L0^3"]),
    ("seifert_poincare.txt", &["seifert", "--cone", "2,3,5", "--euler", "L0", "--det", "L0"]),
    ("seifert_brieskorn.json", &["seifert", "--cone", "2,3,7", "--euler", "L0", "--det", "L0^5", "--format", "json"]),
    ("seifert_237_type_b.txt", &["seifert", "--cone", "2,3,7", "--euler", "L0", "--det", "L0"]),
    ("s1sigma_torus.txt", &["s1sigma", "--genus", "1", "--deg-e", "1"]),
    ("s1sigma_torus.json", &["s1sigma", "--genus", "1", "--deg-e", "1", "--format", "json"]),
    ("verify_zeta_60.txt", &["verify-zeta", "--max-a", "60", "--tol", "1e-8"]),
    ("critical_tau_3.txt", &["critical-tau", "--bound", "3"]),
    ("error_bad_isotropy.txt", &["rr", "--cone", "2,3", "--line", "0,2,1"]),
];

/// Runs the CLI in-process, returning `(exit code, stdout, stderr)`.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("orbivortex").chain(args.iter().copied()).map(std::ffi::OsString::from);
    let out = orbifold_vortex::cli::run(argv);
    (out.code, out.stdout, out.stderr)
}

/// The text a golden file records: exit code, stdout and stderr.
pub fn golden_text(args: &[&str]) -> String {
    let (code, stdout, stderr) = run_cli(args);
    let mut text = format!("$ orbivortex {}\n[exit {code}]\n", args.join(" "));
    text.push_str(&stdout);
    if !stderr.is_empty() {
        text.push_str("[stderr]\n");
        text.push_str(&stderr);
    }
    text
}

pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}
