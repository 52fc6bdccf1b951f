import json
import subprocess


def test_heisenberg_arithmetic(pcw):
    g = pcw.heisenberg()
    assert g.hirsch_length() == 3
    e = pcw.collect(g, "g2 g1")
    assert e.exps() == ["1", "1", "1"]
    a = g.element("g1")
    b = g.element("g2")
    assert pcw.commutator(a, b).exps() == ["0", "0", "-1"]
    assert pcw.mul(a, pcw.inv(a)).is_identity()


def test_consistency_and_random(pcw):
    g = pcw.unitriangular(4)
    ok, witness = g.check_consistency(50, 7)
    assert ok, witness
    word, elem = pcw.random_element(g, 3, 5, seed=42)
    word2, elem2 = pcw.random_element(g, 3, 5, seed=42)
    assert word == word2
    assert elem == elem2


def test_csp_oracle(pcw):
    g = pcw.heisenberg()
    a = g.element("g2")
    conj = g.element("g1")
    b = pcw.conjugate(a, conj)
    res = pcw.csp_enumerate(g, [(a, b)], max_nodes=10000, max_radius=4)
    assert res["found"]


def test_aag_and_lba(pcw):
    g = pcw.unitriangular(4)
    session = pcw.aag_run(g, N1=5, N2=5, L1=2, L2=4, L=2, seed=11)
    assert not session["kappa"].is_identity()
    res = pcw.lba(session["public_json"], side="alice", memory=2, max_iterations=300)
    assert "success" in res


def test_field_attack_recovers_key(pcw):
    g = pcw.zsqrt2()
    session = pcw.aag_run(g, seed=5)
    res = pcw.field_attack(session["public_json"], g)
    assert res["success"]
    assert res["key"] == session["kappa"]


def test_small_cancellation(pcw):
    rels, lam = pcw.generate_relator_set(alphabet_size=3, count=2, min_len=16, seed=3)
    num, den = (lam.split("/") + ["1"])[:2]
    assert int(num) * 6 < int(den)
    assert pcw.dehn_reduce(3, rels, rels[0]) == "1"


def test_secret_sharing_roundtrip(pcw):
    assert pcw.ss_roundtrip_nn("10110010", n=4, seed=9) == "10110010"


def test_cli_group_and_bench(pcw_cli, tmp_path):
    out = tmp_path / "heis.pc"
    subprocess.run([pcw_cli, "group", "make", "heisenberg", "--out", str(out)], check=True)
    text = out.read_text()
    assert text.startswith("pcgroup v1")

    report = subprocess.run(
        [pcw_cli, "bench", "collection", "--group", str(out), "--trials", "5",
         "--len-max", "16", "--seed", "3", "--format", "csv"],
        check=True, capture_output=True, text=True).stdout
    assert report.splitlines()[0] == "group,hirsch,metric,value,unit,seed,trials"


def test_cli_aag_attack_pipeline(pcw_cli, tmp_path):
    pub = tmp_path / "pub.json"
    priv = tmp_path / "priv.json"
    subprocess.run(
        [pcw_cli, "aag", "run", "--group", "heisenberg", "--seed", "4",
         "--out", str(pub), "--private-out", str(priv)],
        check=True)
    data = json.loads(pub.read_text())
    assert data["schema"] == "pcw-aag-public/1"

    res = subprocess.run(
        [pcw_cli, "attack", "lba", "--transcript", str(pub), "--memory", "2",
         "--max-iter", "200"],
        check=True, capture_output=True, text=True).stdout
    parsed = json.loads(res)
    assert parsed["outcome"] in ("success", "fail")


def test_cli_field_attack_pipeline(pcw_cli, tmp_path):
    semi = tmp_path / "sd.in"
    semi.write_text("degree 2\nmatrix 1 2 1 1\n")
    rep = tmp_path / "sd.rep"
    subprocess.run(
        [pcw_cli, "group", "make", f"semidirect:{semi}", "--out", str(tmp_path / "sd.pc"),
         "--rep-out", str(rep)],
        check=True)

    pub = tmp_path / "pub.json"
    priv = tmp_path / "priv.json"
    subprocess.run(
        [pcw_cli, "aag", "run", "--group", f"semidirect:{semi}", "--seed", "12",
         "--out", str(pub), "--private-out", str(priv)],
        check=True)

    out = subprocess.run(
        [pcw_cli, "attack", "field", "--transcript", str(pub), "--rep", str(rep)],
        check=True, capture_output=True, text=True).stdout
    res = json.loads(out)
    assert res["outcome"] == "success"
    assert res["key"] == json.loads(priv.read_text())["kappa"]
