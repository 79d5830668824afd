use ordprop::proportions::ProportionTable;
use ordprop::Error;

#[test]
fn csv_round_trip() {
    let mut t = ProportionTable::new();
    for m in [1u64, 6, 7, 60] {
        t.get(30, m, false);
        t.get(30, m, true);
    }
    let mut buf = Vec::new();
    t.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("n,m,signed,numerator,denominator\n"));

    let mut back = ProportionTable::read_csv(buf.as_slice()).unwrap();
    for m in [1u64, 6, 7, 60] {
        for n in 0..=30i64 {
            assert_eq!(
                back.lookup(n, m, false),
                t.lookup(n, m, false),
                "n={n} m={m}"
            );
            assert_eq!(back.lookup(n, m, true), t.lookup(n, m, true), "n={n} m={m}");
        }
    }
    // extending a loaded row continues the recursion
    let mut fresh = ProportionTable::new();
    assert_eq!(back.get(45, 60, false), fresh.get(45, 60, false));

    let mut again = Vec::new();
    ProportionTable::read_csv(buf.as_slice())
        .unwrap()
        .write_csv(&mut again)
        .unwrap();
    assert_eq!(again, buf);
}

#[test]
fn rejects_inconsistent_cache() {
    let bad = "n,m,signed,numerator,denominator\n1,2,false,1,2\n";
    assert!(matches!(
        ProportionTable::read_csv(bad.as_bytes()),
        Err(Error::Cache(_))
    ));
    let garbage = "n,m,signed,numerator,denominator\nx,2,false,1,2\n";
    assert!(ProportionTable::read_csv(garbage.as_bytes()).is_err());
}
