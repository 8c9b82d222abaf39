use std::process::Command;
use std::time::{Duration, Instant};

use kmv_core::data::DATA_ENV;
use kmv_core::harness::{CheckResult, RunReport};

fn kmv(args: &[&str]) -> (Option<i32>, String, Duration) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_kmv"))
        .args(args)
        .env_remove(DATA_ENV)
        .output()
        .expect("kmv runs");
    (out.status.code(), String::from_utf8(out.stdout).unwrap(), t.elapsed())
}

fn constant<'a>(c: &'a CheckResult, key: &str) -> &'a str {
    c.constants.get(key).map(String::as_str).unwrap_or("")
}

fn ms(r: &RunReport, ids: &[&str]) -> f64 {
    r.timings.iter().filter(|(k, _)| ids.iter().any(|id| k.ends_with(&format!(":{id}")))).map(|(_, v)| v).sum()
}

#[test]
fn acceptance() {
    let (code, first, t1) = kmv(&["report", "--format", "json"]);
    let (_, second, t2) = kmv(&["report", "--format", "json", "--jobs", "4"]);
    let a = RunReport::from_json(&first).expect("report parses");
    let b = RunReport::from_json(&second).expect("report parses");
    let ok = |ids: &[&str]| ids.iter().all(|id| a.check(id).is_some_and(|c| c.pass));
    let get = |id: &str| a.check(id).unwrap_or_else(|| panic!("{id} missing"));

    let (vac_code, _, vac_t) = kmv(&["verify-singular", "--case", "vacuum-sl4", "--k", "-5/2"]);
    let vac = get("vacuum-singular");
    let zhu = get("zhu-p0");
    let fac = get("zhu-factorizations");
    let ope = get("ope-collapse");
    let rw = get("reduced-weights");
    let fusion = get("fusion");
    let weyl = get("weyl-hom");

    let criteria: Vec<(&str, bool)> = vec![
        (
            "vacuum singular vector at k = -5/2",
            ok(&["vacuum-singular", "vacuum-mutations"])
                && get("vacuum-mutations").summary.starts_with("20/20")
                && vac.residuals.len() == 4
                && vac.residuals.iter().all(|r| r.zero)
                && vac_code == Some(0)
                && vac_t < Duration::from_secs(10),
        ),
        ("Zhu polynomials p1, p2 match the stored data", ok(&["zhu-p0"])),
        (
            "Zhu families vanish and the box scan finds nothing else",
            ok(&["zhu-families", "zhu-box-scan"])
                && constant(get("zhu-box-scan"), "missed") == "0"
                && constant(get("zhu-box-scan"), "off_line") == "0"
                && ms(&a, &["zhu-families", "zhu-box-scan"]) < 30_000.0,
        ),
        (
            "Zhu factorizations with constants c, c'",
            ok(&["zhu-factorizations"])
                && constant(fac, "q_identity") == "true"
                && !constant(fac, "c").is_empty()
                && !constant(fac, "c_prime").is_empty(),
        ),
        ("C2 images reduce as stated", ok(&["c2-vacuum", "c2-wnu-omega1", "c2-wnu-omega3"])),
        (
            "W-algebra OPE collapses at k = -5/2 only",
            ok(&["ope-collapse", "ope-generic"])
                && constant(ope, "pole4") == "0"
                && constant(ope, "pole3") == "0"
                && constant(ope, "pole2_L") == "3/4"
                && constant(ope, "pole2_JJ") == "-3"
                && constant(ope, "central") == "1/2"
                && constant(ope, "central_charge") == "1"
                && constant(ope, "ww_leading") == "0",
        ),
        ("w_{n,omega1} and w_{n,omega3} are singular", ok(&["wnu-omega1", "wnu-omega3", "wnu-uniqueness", "degree-table"])),
        (
            "reduced weights and exclusions",
            ok(&["reduced-weights"])
                && constant(rw, "delta_w_w1") == "1/4*n + 1/4*n^2"
                && constant(rw, "delta_w_w3") == "-1/4*n + 1/4*n^2"
                && constant(rw, "j0_w1") == "3/4*n"
                && constant(rw, "excluded_w3").contains("5/4"),
        ),
        (
            "tensor decompositions agree with the oracle",
            ok(&["fusion"])
                && constant(fusion, "oracle_disagreements") == "0"
                && constant(fusion, "top_multiplicity_one") == "true"
                && constant(fusion, "oracle_pairs") != "0",
        ),
        (
            "Weyl-algebra homomorphism and images",
            ok(&["weyl-hom", "weyl-vprime", "weyl-relations", "weyl-ma"])
                && constant(weyl, "sl4_defects") == "0"
                && constant(weyl, "sl5_defects") == "0",
        ),
        ("sl(5) singular vectors and decompositions", ok(&["sl5-u", "sl5-families", "sl5-decomposition"])),
        (
            "report is deterministic and fast",
            a.deterministic_json() == b.deterministic_json()
                && a.checks.len() == 27
                && t1 + t2 < Duration::from_secs(300),
        ),
    ];
    for (i, (name, pass)) in criteria.iter().enumerate() {
        println!("[{}] {:2} {name}", if *pass { "PASS" } else { "FAIL" }, i + 1);
    }

    // The stored p1, p2 carry the opposite overall sign from the computed ones.
    assert_eq!(constant(zhu, "relation"), "computed = -stored");
    assert_eq!(constant(zhu, "independent"), "true");
    assert_eq!(a.failing(), vec!["zhu-p0"]);
    assert_eq!(code, Some(1));
    let failed: Vec<usize> = criteria.iter().enumerate().filter(|(_, c)| !c.1).map(|(i, _)| i + 1).collect();
    assert_eq!(failed, vec![2]);
}
