"""HTTP API serving trials to the browser client.

Sessions run a familiarization phase (feedback after each answer) followed
by a test phase (no feedback). Problem payloads never include the answer
index; correctness appears only in familiarization acknowledgments and the
experimenter-facing export. Responses are kept in memory and appended to a
JSONL log, flushed per record.
"""

import json
import random
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse, Response
from pydantic import BaseModel, Field

from .answers import Problem
from .render import png_bytes, render_panel

CSV_HEADER = ("session_id,problem_id,config,chosen,target,"
              "correct,latency_ms,timestamp")


class ResponseIn(BaseModel):
    session_id: str
    problem_id: str
    chosen_index: int = Field(ge=0, le=7)
    latency_ms: float = Field(ge=0)


class _Session:
    def __init__(self, sid: str, famil_order: List[str],
                 test_order: List[str]):
        self.id = sid
        self.famil_order = famil_order
        self.test_order = test_order
        self.order = famil_order + test_order
        self.responses: Dict[str, dict] = {}

    def phase_of(self, problem_id: str) -> str:
        return ("familiarization" if problem_id in set(self.famil_order)
                else "test")


def create_app(test_problems: Sequence[Problem],
               familiarization: Sequence[Problem],
               test_per_config: int = 2,
               log_path: Optional[Path] = None) -> FastAPI:
    by_id: Dict[str, Problem] = {}
    for problem in list(familiarization) + list(test_problems):
        if problem.id in by_id:
            raise ValueError("duplicate problem id %r" % problem.id)
        by_id[problem.id] = problem

    by_config: Dict[str, List[Problem]] = {}
    for problem in test_problems:
        by_config.setdefault(problem.config.name.value, []).append(problem)

    app = FastAPI(title="matrix trials")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"])

    lock = threading.Lock()
    sessions: Dict[str, _Session] = {}
    all_responses: List[dict] = []
    png_cache: Dict[tuple, bytes] = {}
    log_file = open(log_path, "a") if log_path else None

    def get_session(sid: str) -> _Session:
        session = sessions.get(sid)
        if session is None:
            raise HTTPException(404, "unknown session")
        return session

    @app.post("/api/session")
    def open_session():
        sid = uuid.uuid4().hex
        rng = random.Random(sid)
        famil_order = [p.id for p in familiarization]
        rng.shuffle(famil_order)
        picked = []
        for name in sorted(by_config):
            pool = list(by_config[name])
            rng.shuffle(pool)
            picked.extend(p.id for p in pool[:test_per_config])
        rng.shuffle(picked)
        session = _Session(sid, famil_order, picked)
        with lock:
            sessions[sid] = session
        return {"session_id": sid, "phases": [
            {"phase": "familiarization", "count": len(famil_order)},
            {"phase": "test", "count": len(picked)}]}

    @app.get("/api/problem")
    def get_problem(session: str, index: int):
        sess = get_session(session)
        if not 0 <= index < len(sess.order):
            raise HTTPException(404, "problem index out of range")
        pid = sess.order[index]
        problem = by_id[pid]
        return {
            "session_id": sess.id,
            "index": index,
            "total": len(sess.order),
            "phase": ("familiarization" if index < len(sess.famil_order)
                      else "test"),
            "problem_id": pid,
            "config": problem.config.name.value,
            "panels": ["/api/panel/%s/%d.png" % (pid, k)
                       for k in range(16)],
        }

    @app.get("/api/panel/{problem_id}/{index}.png")
    def get_panel(problem_id: str, index: int):
        problem = by_id.get(problem_id)
        if problem is None or not 0 <= index < 16:
            raise HTTPException(404, "unknown panel")
        key = (problem_id, index)
        if key not in png_cache:
            panels = problem.context + problem.candidates
            png_cache[key] = png_bytes(render_panel(panels[index]))
        return Response(png_cache[key], media_type="image/png")

    @app.post("/api/response")
    def post_response(body: ResponseIn):
        sess = get_session(body.session_id)
        problem = by_id.get(body.problem_id)
        if problem is None or body.problem_id not in sess.order:
            raise HTTPException(404, "problem not in session")
        phase = sess.phase_of(body.problem_id)
        record = {
            "session_id": sess.id,
            "problem_id": body.problem_id,
            "config": problem.config.name.value,
            "phase": phase,
            "chosen_index": body.chosen_index,
            "target": problem.target,
            "correct": body.chosen_index == problem.target,
            "latency_ms": body.latency_ms,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        with lock:
            if body.problem_id in sess.responses:
                raise HTTPException(409, "response already recorded")
            sess.responses[body.problem_id] = record
            all_responses.append(record)
            if log_file is not None:
                log_file.write(json.dumps(record, sort_keys=True) + "\n")
                log_file.flush()
        ack = {"recorded": True}
        if phase == "familiarization":
            ack["correct"] = record["correct"]
        return ack

    @app.get("/api/summary")
    def get_summary(session: str):
        sess = get_session(session)
        with lock:
            test_records = [r for r in sess.responses.values()
                            if r["phase"] == "test"]
        per: Dict[str, List] = {}
        for record in test_records:
            cell = per.setdefault(record["config"], [0, 0, 0.0])
            cell[0] += int(record["correct"])
            cell[1] += 1
            cell[2] += record["latency_ms"]

        def stats(correct, count, latency):
            return {"correct": correct, "count": count,
                    "accuracy": round(100.0 * correct / count, 2),
                    "mean_latency_ms": round(latency / count, 2)}

        configs = {name: stats(*cell) for name, cell in sorted(per.items())}
        total_correct = sum(c[0] for c in per.values())
        total = sum(c[1] for c in per.values())
        total_latency = sum(c[2] for c in per.values())
        overall = (stats(total_correct, total, total_latency) if total
                   else {"correct": 0, "count": 0, "accuracy": 0.0,
                         "mean_latency_ms": 0.0})
        return {"configs": configs, "overall": overall,
                "complete": total == len(sess.test_order),
                "expected": len(sess.test_order)}

    @app.get("/api/export")
    def export(format: str = "csv"):
        if format != "csv":
            raise HTTPException(400, "only csv export is supported")
        with lock:
            rows = list(all_responses)
        lines = [CSV_HEADER]
        for r in rows:
            lines.append("%s,%s,%s,%d,%d,%d,%s,%s" % (
                r["session_id"], r["problem_id"], r["config"],
                r["chosen_index"], r["target"], int(r["correct"]),
                ("%g" % r["latency_ms"]), r["timestamp"]))
        return PlainTextResponse("\n".join(lines) + "\n",
                                 media_type="text/csv")

    return app
