# Copyright 2026 The uncom Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Stand-in perception bridge speaking the NDJSON stdio protocol.

Usage: fake_bridge.py [normal|garbage|slow|bad_handshake|wrong_id|larger_z|three_hands]
"""

import json
import sys
import time

MODE = sys.argv[1] if len(sys.argv) > 1 else "normal"
FRAMES = {"f1", "f2"}


def send(obj):
    sys.stdout.write(json.dumps(obj) + "\n")
    sys.stdout.flush()


def hand(x, y, z):
    lm = [{"x": x, "y": y + 0.1, "z": z + 0.03} for _ in range(21)]
    lm[5] = {"x": x, "y": y + 0.06, "z": z + 0.02}
    lm[8] = {"x": x, "y": y, "z": z}
    return {"landmarks": lm, "handedness": "right", "score": 0.9}


def reply(req):
    cap = req.get("capability")
    args = req.get("args", {})
    frame = args.get("frame")
    if cap in ("detect", "hands", "segment", "depth") and frame not in FRAMES:
        raise LookupError(("UnknownFrame", "no frame %s" % frame))
    if cap == "detect":
        if args["prompt"] == "mug.":
            return [{"label": "mug", "bbox": [0.2, 0.5, 0.3, 0.6], "score": 0.7, "frame_id": frame}]
        return []
    if cap == "hands":
        hands = [hand(0.25, 0.3, -0.05)]
        if MODE == "three_hands":
            hands = hands * 3
        return hands
    if cap == "segment":
        return {"width": 4, "height": 2, "rle": [2, 2, 4]}
    if cap == "depth":
        return {"width": 2, "height": 2, "values": [0.1, 0.2, 0.3, 0.4]}
    if cap == "transcribe":
        return {"language": "en", "words": [{"text": "Take", "start": 0.1, "end": 0.3}]}
    if cap == "extract":
        return {"text": "{'object': 'mug', 'action': 'take', 'target': 'here'}"}
    raise LookupError(("UnknownCapability", "cannot %s" % cap))


def main():
    if MODE == "bad_handshake":
        send({"schema": "uncom/0", "capabilities": []})
        return
    if MODE == "slow":
        time.sleep(5)
    send({
        "schema": "uncom/1",
        "capabilities": ["detect", "hands", "segment", "depth", "transcribe", "extract"],
        "z_sign": "closer_is_larger" if MODE == "larger_z" else "closer_is_smaller",
    })
    for line in sys.stdin:
        req = json.loads(line)
        if MODE == "garbage":
            sys.stdout.write("Traceback (most recent call last): model exploded\n")
            sys.stdout.flush()
            continue
        rid = req["id"] + 1 if MODE == "wrong_id" else req["id"]
        try:
            send({"id": rid, "ok": True, "payload": reply(req)})
        except LookupError as e:
            code, message = e.args[0]
            send({"id": rid, "ok": False, "error": {"code": code, "message": message}})


if __name__ == "__main__":
    main()
