"""Local HTTP review service.

Single-session: one rationale + program per process. Serves the analysis
snapshot and checklist, accepts judgments (durably appended to a line-
delimited JSON session log before acknowledgment), and answers stateless
what-if queries. Serves the UI's static assets when a directory is provided;
fully functional headless.
"""

from __future__ import annotations

import hashlib
import json
import mimetypes
import os
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from .assurance import (
    ChecklistItem, Judgment, JudgmentVerdict, checklist_item_to_json,
    extract_checklist, propagate, whatif,
)
from .pipeline import AnalysisResult, evidence_to_json
from .rationale.dsl import print_rationale
from .rationale.interchange import rationale_to_json

API_VERSION = "1"


class SessionMismatchError(Exception):
    pass


class ReviewService:
    def __init__(self, rationale, program, analysis: AnalysisResult,
                 session_path, port: int = 7341, host: str = "127.0.0.1",
                 ui_dir: Optional[Path] = None):
        self.rationale = rationale
        self.program = program
        self.analysis = analysis
        self.session_path = Path(session_path)
        self.port = port
        self.host = host
        self.ui_dir = Path(ui_dir) if ui_dir else None
        self.rationale_hash = hashlib.sha256(
            print_rationale(rationale).encode("utf-8")).hexdigest()
        self.subject_hash = program.source_hash
        self.judgments: list = []
        self._lock = threading.Lock()
        self._last_timestamp = 0.0
        self._items = extract_checklist(
            rationale, analysis.evidence, analysis.verdicts)
        self._item_ids = {item.id for item in self._items}
        self._server = None
        self._thread = None
        self._load_session()

    # -- session log --

    def _header(self) -> dict:
        return {"kind": "session", "version": 1,
                "rationaleHash": self.rationale_hash,
                "subjectHash": self.subject_hash}

    def _load_session(self):
        if not self.session_path.exists():
            return
        lines = [ln for ln in self.session_path.read_text().splitlines() if ln.strip()]
        if not lines:
            return
        header = json.loads(lines[0])
        if header.get("rationaleHash") != self.rationale_hash \
                or header.get("subjectHash") != self.subject_hash:
            raise SessionMismatchError(
                "session file %s was recorded for different content "
                "(rationale %s..., subject %s...); refusing to load it"
                % (self.session_path, str(header.get("rationaleHash"))[:12],
                   str(header.get("subjectHash"))[:12]))
        for line in lines[1:]:
            data = json.loads(line)
            j = Judgment(
                item_id=data["itemId"],
                verdict=JudgmentVerdict(data["verdict"]),
                note=data.get("note", ""),
                timestamp=data["timestamp"],
            )
            self.judgments.append(j)
            self._last_timestamp = max(self._last_timestamp, j.timestamp)

    def _append_judgment(self, item_id: str, verdict: JudgmentVerdict,
                         note: str) -> Judgment:
        with self._lock:
            timestamp = max(time.time(), self._last_timestamp + 1e-6)
            self._last_timestamp = timestamp
            j = Judgment(item_id, verdict, note, timestamp)
            fresh = not self.session_path.exists()
            with open(self.session_path, "a", encoding="utf-8") as handle:
                if fresh:
                    handle.write(json.dumps(self._header()) + "\n")
                handle.write(json.dumps({
                    "itemId": j.item_id, "verdict": j.verdict.value,
                    "note": j.note, "timestamp": j.timestamp}) + "\n")
                handle.flush()
                os.fsync(handle.fileno())
            self.judgments.append(j)
            return j

    # -- views --

    def status_json(self, judgments=None) -> dict:
        report = propagate(
            self.rationale, self.analysis.evidence, self.analysis.verdicts,
            self.judgments if judgments is None else judgments)
        return {
            "statuses": {cid: report.statuses[cid].value
                         for cid in sorted(report.statuses)},
            "warnings": list(report.warnings),
            "root": report.root,
            "rootEstablished": report.root_established,
        }

    def checklist_json(self) -> list:
        return [checklist_item_to_json(item) for item in self._items]

    def whatif_json(self, overlay_entries) -> dict:
        overlay = []
        for entry in overlay_entries:
            overlay.append(Judgment(
                item_id=entry["itemId"],
                verdict=JudgmentVerdict(entry.get("verdict", "doubted")),
                note=entry.get("note", ""),
            ))
        report, delta = whatif(
            self.rationale, self.analysis.evidence, self.analysis.verdicts,
            self.judgments, overlay)
        return {
            "status": {cid: report.statuses[cid].value
                       for cid in sorted(report.statuses)},
            "delta": delta,
        }

    # -- server plumbing --

    def start(self):
        handler = _build_handler(self)
        self._server = ThreadingHTTPServer((self.host, self.port), handler)
        self.port = self._server.server_address[1]
        self._thread = threading.Thread(
            target=self._server.serve_forever, daemon=True)
        self._thread.start()
        return self

    def stop(self):
        if self._server is not None:
            self._server.shutdown()
            self._server.server_close()
            self._thread.join(timeout=5)
            self._server = None

    def base_url(self) -> str:
        return "http://%s:%d" % (self.host, self.port)


def _build_handler(service: ReviewService):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, *args):
            pass

        def _send_json(self, payload, status=200):
            body = json.dumps(payload, indent=2).encode("utf-8")
            self.send_response(status)
            self.send_header("X-AVC-API", API_VERSION)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _read_body(self):
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            if not raw:
                return {}
            return json.loads(raw.decode("utf-8"))

        def do_GET(self):
            path = self.path.split("?", 1)[0]
            if path == "/api/rationale":
                self._send_json(rationale_to_json(service.rationale))
                return
            if path == "/api/checklist":
                self._send_json(service.checklist_json())
                return
            if path == "/api/status":
                self._send_json(service.status_json())
                return
            if path.startswith("/api/evidence/"):
                cid = path[len("/api/evidence/"):]
                evidence = service.analysis.evidence.get(cid)
                if evidence is None:
                    self._send_json(
                        {"error": "no evidence for claim '%s'" % cid}, 404)
                    return
                self._send_json(evidence_to_json(evidence))
                return
            if path.startswith("/api/"):
                self._send_json({"error": "unknown endpoint"}, 404)
                return
            self._serve_static(path)

        def do_POST(self):
            path = self.path.split("?", 1)[0]
            try:
                body = self._read_body()
            except ValueError:
                self._send_json({"error": "malformed JSON body"}, 400)
                return
            if path == "/api/judgments":
                item_id = body.get("itemId") or body.get("item")
                verdict = body.get("verdict")
                if item_id not in service._item_ids:
                    self._send_json(
                        {"error": "unknown checklist item %r" % item_id}, 400)
                    return
                try:
                    parsed = JudgmentVerdict(verdict)
                except ValueError:
                    self._send_json(
                        {"error": "verdict must be accepted, doubted or pending"},
                        400)
                    return
                service._append_judgment(item_id, parsed, body.get("note", ""))
                self._send_json(service.status_json())
                return
            if path == "/api/whatif":
                overlay = body.get("overlay", [])
                bad = [e.get("itemId") for e in overlay
                       if e.get("itemId") not in service._item_ids]
                if bad:
                    self._send_json(
                        {"error": "unknown checklist item %r" % bad[0]}, 400)
                    return
                try:
                    self._send_json(service.whatif_json(overlay))
                except ValueError as exc:
                    self._send_json({"error": str(exc)}, 400)
                return
            self._send_json({"error": "unknown endpoint"}, 404)

        def _serve_static(self, path):
            if service.ui_dir is None:
                self._send_json(
                    {"error": "no UI assets configured; API is under /api"}, 404)
                return
            rel = path.lstrip("/") or "index.html"
            target = (service.ui_dir / rel).resolve()
            root = service.ui_dir.resolve()
            if root not in target.parents and target != root:
                self._send_json({"error": "not found"}, 404)
                return
            if target.is_dir():
                target = target / "index.html"
            if not target.is_file():
                self._send_json({"error": "not found"}, 404)
                return
            body = target.read_bytes()
            ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return Handler
