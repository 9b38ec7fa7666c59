"""Smoke test for the pyranklab extension."""

import json

import pyranklab


def main():
    g = pyranklab.gabidulin("2", 3, 2)
    assert g.rank_distribution() == [1, 0, 49, 14], g.rank_distribution()
    assert g.min_distance() == 2 and g.is_mrd()

    d = g.dual()
    assert d.rank_distribution() == pyranklab.macwilliams(g.rank_distribution(), 2, 3, 3)
    assert d.dual().same_code(g)

    again = pyranklab.Code.from_json(g.to_json())
    assert again.same_code(g) and pyranklab.equivalent(g, again)

    skew_code = pyranklab.skew("2", 2, 2, 1)
    assert skew_code.size() == 16 and skew_code.min_distance() == 2

    try:
        pyranklab.twisted("2", 3, 1, family="tg", eta=1)
    except ValueError as e:
        assert "witness" in str(e)
    else:
        raise AssertionError("TG over GF(2) should be rejected")

    assert pyranklab.schmidt_bound(3, 3, 2) == 202
    assert pyranklab.sample("2", 2, 2, 1, linearity="fqn") == (2, 5, True)

    report = json.loads(pyranklab.census("2", 2, 2, 2, 2))
    assert report["total_subspaces"] == 35
    assert report["filter_count"] == report["mrd_count"] > 0
    print("pyranklab smoke test ok:", g)


if __name__ == "__main__":
    main()
