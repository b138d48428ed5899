use chaosbandit::signal::{
    generate, load_trace, trace_csv, write_trace_binary, SignalSeries, SourceKind, SourceSpec,
    TraceFormat,
};
use chaosbandit::Error;

fn trace_spec(path: &std::path::Path, format: TraceFormat) -> SourceSpec {
    SourceSpec::new(
        SourceKind::TraceFile {
            path: path.to_path_buf(),
            period_ps: None,
            format,
        },
        0,
        0,
    )
}

#[test]
fn csv_round_trip_keeps_samples_and_period() {
    let dir = tempfile::tempdir().unwrap();
    let original = generate(&SourceSpec::new(SourceKind::ar_surrogate(), 4, 5000)).unwrap();
    let original = SignalSeries::new(original.samples().to_vec(), 12.5, "x").unwrap();
    let path = dir.path().join("chaos.csv");
    std::fs::write(&path, trace_csv(&original, &["recorded by hand".into()])).unwrap();
    let loaded = load_trace(&trace_spec(&path, TraceFormat::Auto)).unwrap();
    assert_eq!(loaded.samples(), original.samples());
    assert_eq!(loaded.sample_period_ps(), 12.5);
    assert_eq!(loaded.label(), "trace:chaos");
}

#[test]
fn binary_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let samples: Vec<i16> = (-127..=127).collect();
    let series = SignalSeries::new(samples.clone(), 10.0, "x").unwrap();
    let path = dir.path().join("chaos.bin");
    write_trace_binary(&series, &path).unwrap();
    let loaded = load_trace(&trace_spec(&path, TraceFormat::Binary)).unwrap();
    assert_eq!(loaded.samples(), &samples[..]);
}

#[test]
fn binary_cannot_hold_the_top_value() {
    let dir = tempfile::tempdir().unwrap();
    let series = SignalSeries::new(vec![0, 128], 10.0, "x").unwrap();
    let err = write_trace_binary(&series, &dir.path().join("t.bin")).unwrap_err();
    assert!(matches!(
        err,
        Error::TraceRange {
            index: 2,
            value: 128,
            ..
        }
    ));
}

#[test]
fn out_of_range_csv_value_names_its_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "# period_ps=10\n5\n-3\n300\n").unwrap();
    let err = load_trace(&trace_spec(&path, TraceFormat::Csv)).unwrap_err();
    assert!(
        matches!(
            err,
            Error::TraceRange {
                index: 4,
                value: 300,
                ..
            }
        ),
        "{err}"
    );
}

#[test]
fn missing_trace_is_an_io_error() {
    let err = load_trace(&trace_spec(
        std::path::Path::new("/no/such/trace.csv"),
        TraceFormat::Auto,
    ))
    .unwrap_err();
    assert!(matches!(err, Error::TraceIo { .. }));
}
