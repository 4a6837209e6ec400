"""
End-to-end smoke test against a running coverpath server.
Run with: python scripts/test_e2e.py

Uses only pattern planners and the scripted oracle, so no provider keys are needed.
"""

import asyncio
import sys
from datetime import datetime

import httpx

BASE_URL = "http://localhost:8000"

OPEN5 = "\n".join(["....."] * 5)
PILLARS5 = ".....\n.#.#.\n.....\n.#.#.\n....."
LAWNMOWER_5 = "|".join(
    f"{col},{row}" for col in range(5) for row in (range(5) if col % 2 == 0 else range(4, -1, -1))
)


async def test_health():
    """Test health endpoint."""
    print("\n🏥 Testing health endpoint...")
    async with httpx.AsyncClient() as client:
        r = await client.get(f"{BASE_URL}/health")
        assert r.status_code == 200
        data = r.json()
        assert data["status"] == "ok"
        print(f"   ✅ Health: {data}")
    return True


async def test_evaluate():
    """Score a lawnmower path and a malformed one."""
    print("\n📐 Testing evaluate...")
    async with httpx.AsyncClient() as client:
        r = await client.post(f"{BASE_URL}/evaluate", json={"map": OPEN5, "waypoints": LAWNMOWER_5})
        data = r.json()
        print(f"   ✅ Lawnmower: accepted={data['accepted']} CR={data['coverage_rate']:.2f} "
              f"PL={data['path_length']} turns={data['turn_count']}")

        r = await client.post(f"{BASE_URL}/evaluate", json={"map": OPEN5, "waypoints": "0,0|north"})
        print(f"   ✅ Malformed: {r.status_code} {r.json().get('error')}")


async def test_plan():
    """Run every pattern planner and a scripted oracle on a map with pillars."""
    print("\n🧭 Testing plan...")
    async with httpx.AsyncClient(timeout=60.0) as client:
        r = await client.post(f"{BASE_URL}/plan", json={
            "map": PILLARS5,
            "start": [0, 0],
            "planners": ["lawnmower", "spiral", "wallmow", "llm"],
            "provider": {"kind": "scripted", "script": ["0,0|0,1|0,2", "0,0|1,0|2,0"]},
            "planner": {"max_iterations": 2},
        })
        if r.status_code != 200:
            print(f"   ❌ Failed: {r.status_code} - {r.text}")
            return
        for label, result in r.json().items():
            if "error" in result:
                print(f"   ⚠️ {label}: {result['error']}")
            else:
                report = result["report"]
                print(f"   ✅ {label}: CR={report['coverage_rate']:.2f} CPL={report['cpl_term']:.3f} "
                      f"attempts={result['attempts']}")


async def test_experiment():
    """Queue a small baseline experiment and poll until it finishes."""
    print("\n🧪 Testing experiments...")
    async with httpx.AsyncClient(timeout=30.0) as client:
        r = await client.post(f"{BASE_URL}/experiments", json={
            "name": "e2e",
            "maps": [{"id": "open5", "builtin": "open5", "start_policy": "corners"}],
            "baselines": ["lawnmower", "spiral"],
            "episodes": 2,
        })
        if r.status_code != 202:
            print(f"   ❌ Failed: {r.status_code} - {r.text}")
            return
        experiment_id = r.json()["id"]
        print(f"   ✅ Queued: {experiment_id}")

        for _ in range(60):
            data = (await client.get(f"{BASE_URL}/experiments/{experiment_id}")).json()
            if data["status"] in ("complete", "failed"):
                break
            await asyncio.sleep(1)

        print(f"   📊 Status: {data['status']}")
        for row in data.get("rows", []):
            print(f"      {row['map_id']:<8} {row['model_id']:<10} CPL={row['cpl']:.3f} CR={row['cr']:.1f}%")


async def run_full_test():
    """Run complete E2E test."""
    print("="*60)
    print("🚀 COVERPATH E2E TEST")
    print(f"   Time: {datetime.now().isoformat()}")
    print(f"   Server: {BASE_URL}")
    print("="*60)

    try:
        await test_health()
    except Exception as e:
        print(f"❌ Server not running? {e}")
        print("\n👉 Start server with: python -m app serve --port 8000")
        sys.exit(1)

    await test_evaluate()
    await test_plan()
    await test_experiment()

    print("\n" + "="*60)
    print("✅ E2E TEST COMPLETE")
    print("="*60)


if __name__ == "__main__":
    asyncio.run(run_full_test())
