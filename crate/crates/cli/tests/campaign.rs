use brauer_cli::campaign::{sample_campaign, write_csv, BoundCell, CampaignParams, CSV_HEADER};
use brauer_core::driver::Method;

fn csv_bytes(params: &CampaignParams) -> Vec<u8> {
    let c = sample_campaign(params).unwrap();
    let mut out = Vec::new();
    write_csv(&c.records, &mut out).unwrap();
    out
}

#[test]
fn reruns_are_byte_identical() {
    let mut params = CampaignParams::new(3, 2, 5, 12, 99);
    params.omit_timings = true;
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("run{i}.csv"))).collect();
    for p in &paths {
        std::fs::write(p, csv_bytes(&params)).unwrap();
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(text.lines().count(), 13);
}

#[test]
fn single_record_is_reproducible() {
    let mut params = CampaignParams::new(4, 2, 6, 1, 7);
    params.methods = vec![Method::Djp, Method::Refined];
    let a = sample_campaign(&params).unwrap().records;
    let b = sample_campaign(&params).unwrap().records;
    assert_eq!(a.len(), 1);
    let strip = |r: &brauer_cli::campaign::SampleRecord| brauer_cli::campaign::SampleRecord { elapsed_ms: None, ..r.clone() };
    assert_eq!(strip(&a[0]), strip(&b[0]));
    assert_eq!(a[0].hotchkiss_bound, BoundCell::Skipped);
}

#[test]
fn ninety_six_distinct_orbits() {
    let mut params = CampaignParams::new(4, 2, 6, 96, 1);
    params.methods = vec![Method::Djp];
    let c = sample_campaign(&params).unwrap();
    assert!(!c.exhausted);
    assert_eq!(c.records.len(), 96);
    let forms: std::collections::HashSet<_> = c.records.iter().map(|r| r.form.clone()).collect();
    assert_eq!(forms.len(), 96);
    assert!(c.records.iter().all(|r| r.hamming_weight <= 6 && r.period == 2));
    assert!(c.records.windows(2).all(|w| w[0].sample_index < w[1].sample_index));
}

#[test]
fn tiny_spaces_run_dry() {
    // On an elliptic curve every class mod 2 is 0 or θ, both trivial.
    let mut params = CampaignParams::new(1, 2, 1, 3, 5);
    params.patience = 200;
    let c = sample_campaign(&params).unwrap();
    assert!(c.exhausted);
    assert!(c.records.is_empty());
    // A surface mod 2 has only 2^5 − 1 nontrivial orbits.
    let mut params = CampaignParams::new(2, 2, 6, 100, 5);
    params.patience = 500;
    let c = sample_campaign(&params).unwrap();
    assert!(c.exhausted);
    assert_eq!(c.records.len(), 31);
}

#[test]
fn orbit_uniform_sampling_still_dedups() {
    let mut params = CampaignParams::new(3, 3, 4, 10, 2);
    params.orbit_uniform = true;
    params.methods = vec![Method::Djp];
    let c = sample_campaign(&params).unwrap();
    let forms: std::collections::HashSet<_> = c.records.iter().map(|r| r.form.clone()).collect();
    assert_eq!(forms.len(), c.records.len());
    assert_eq!(c.records.len(), 10);
}
