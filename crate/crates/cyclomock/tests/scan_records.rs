use std::collections::BTreeSet;

use cyclomock::records::{completed, persist, resume, resume_for_append, Record, ScanRecord};
use cyclomock::scan::{scan_nonvanishing, ScanOptions};
use cyclomock_core::catalog::FunctionId;
use proptest::prelude::*;

fn scan(ids: &[FunctionId], lo: usize, hi: usize, skip: &BTreeSet<(String, usize)>) -> Vec<ScanRecord> {
    scan_nonvanishing(ids, lo, hi, ScanOptions::default(), skip).unwrap()
}

fn stable(mut r: ScanRecord) -> ScanRecord {
    r.elapsed_ms = 0;
    r
}

#[test]
fn scan_is_deterministic() {
    let ids = [FunctionId::Phi, FunctionId::U, FunctionId::S0PNeg];
    let a: Vec<_> = scan(&ids, 1, 31, &BTreeSet::new()).into_iter().map(stable).collect();
    let b: Vec<_> = scan(&ids, 1, 31, &BTreeSet::new()).into_iter().map(stable).collect();
    assert_eq!(a, b);
}

#[test]
fn margins_attach_only_where_defined() {
    let opts = ScanOptions { margins: true, ..ScanOptions::default() };
    let recs = scan_nonvanishing(&[FunctionId::Phi, FunctionId::Mu], 5, 9, opts, &BTreeSet::new()).unwrap();
    for r in recs {
        assert_eq!(r.margin.is_some(), r.function == "phi" && r.n >= 7, "{} {}", r.function, r.n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn resumed_scan_equals_full_scan(split in 0usize..12, partial in 0usize..30) {
        let ids = [FunctionId::Phi, FunctionId::Lambda];
        let n_max = 23;
        let mid = 2 * split + 1;
        let mut full: Vec<Record> = scan(&ids, 1, n_max, &BTreeSet::new()).into_iter().map(stable).map(Record::from).collect();

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.jsonl");
        let first: Vec<Record> = scan(&ids, 1, mid, &BTreeSet::new()).into_iter().map(stable).map(Record::from).collect();
        persist(&first, &path).unwrap();
        // Simulate a crash mid-write.
        let torn = full.last().unwrap().to_line();
        let mut text = std::fs::read_to_string(&path).unwrap();
        text.push_str(&torn[..partial.min(torn.len() - 1)]);
        std::fs::write(&path, text).unwrap();

        let done = completed(&resume_for_append(&path).unwrap());
        let rest: Vec<Record> = scan(&ids, 1, n_max, &done).into_iter().map(stable).map(Record::from).collect();
        persist(&rest, &path).unwrap();

        let mut merged = resume(&path).unwrap();
        let by_key = |a: &Record, b: &Record| (a.key().1, a.key().0).cmp(&(b.key().1, b.key().0));
        merged.sort_by(by_key);
        full.sort_by(by_key);
        prop_assert_eq!(merged, full);
    }
}
