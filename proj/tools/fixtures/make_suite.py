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

"""Writes the synthetic grounding suite: <name>.bundle.json + <name>.gold.json.

Every scene is authored in normalized image coordinates. Detector replies are
derived from the scene description (not from the engine), hands point at the
intended item, and gold regions come from the scene layout alone. The script
checks its own layouts with a brute-force ray test before writing anything.

usage: make_suite.py [--out DIR]
"""

import argparse
import json
import math
import pathlib
import sys

FPS = 30.0
MASK_W, MASK_H = 64, 48
DEPTH_W, DEPTH_H = 64, 48
TABLE = (0.10, 0.40, 0.90, 0.94)
GRID = 6
SCORE_FLOOR = 0.3
RAY_MARGIN = 0.02
FILLERS = ("the", "a", "an", "this", "that", "these", "those", "other", "another", "some", "my", "your")


class Obj:
    def __init__(self, cls, cx, cy, w, h, score=0.8, tags=(), container=False):
        self.cls = cls
        self.bbox = [round(cx - w / 2, 4), round(cy - h / 2, 4), round(cx + w / 2, 4), round(cy + h / 2, 4)]
        self.score = score
        self.tags = {cls, *tags}
        self.container = container

    def center(self):
        return ((self.bbox[0] + self.bbox[2]) / 2, (self.bbox[1] + self.bbox[3]) / 2)


def mug(cx, cy, **kw):
    return Obj("mug", cx, cy, 0.07, 0.09, tags=("cup",), **kw)


def plate(cx, cy, **kw):
    return Obj("plate", cx, cy, 0.14, 0.08, container=True, **kw)


def bowl(cx, cy, **kw):
    return Obj("bowl", cx, cy, 0.12, 0.08, container=True, **kw)


def banana(cx, cy, **kw):
    return Obj("banana", cx, cy, 0.12, 0.05, tags=("fruit",), **kw)


def apple(cx, cy, **kw):
    return Obj("apple", cx, cy, 0.06, 0.06, tags=("fruit",), **kw)


def pan(cx, cy, **kw):
    return Obj("frying pan", cx, cy, 0.20, 0.10, container=True, **kw)


def cereal(cx, cy, **kw):
    return Obj("cereal", cx, cy, 0.08, 0.14, **kw)


def spoon(cx, cy, **kw):
    return Obj("spoon", cx, cy, 0.10, 0.03, **kw)


def cup(cx, cy, **kw):
    return Obj("cup", cx, cy, 0.06, 0.08, **kw)


def box(cx, cy, **kw):
    return Obj("box", cx, cy, 0.09, 0.09, **kw)


# --- scenes -----------------------------------------------------------------
#
# object/target: ("named", prompt phrase, index) picks objects[index] among the
# detections for "<phrase>."; ("deictic", index) uses the generic prompt;
# ("container", index); ("relative", anchor phrase, anchor index, relation);
# ("area", (x, y) grid site). approach: unit-ish direction the finger travels.

SCENES = [
    dict(name="t01_mug_plate", text="Take the mug and put it on this plate", action="take, put on",
         labels=("reference", False, "reference", False, False),
         objects=[mug(0.30, 0.60), plate(0.65, 0.70)],
         object=("named", "mug", 0), target=("named", "plate", 1)),
    dict(name="t02_mug_plate_distractor", text="Take the mug and put it on this plate", action="take, put on",
         labels=("reference", True, "reference", False, False),
         objects=[mug(0.30, 0.62, score=0.71), mug(0.55, 0.48, score=0.90), plate(0.70, 0.82)],
         object=("named", "mug", 0), target=("named", "plate", 2), approach=(0.3, 1.0)),
    dict(name="t03_this_mug_this_plate", text="Take this mug and put it on this plate", action="take, put on",
         labels=("reference", True, "reference", True, False),
         objects=[mug(0.25, 0.55, score=0.74), mug(0.45, 0.82, score=0.86), plate(0.66, 0.52, score=0.88),
                  plate(0.76, 0.82, score=0.79)],
         object=("named", "mug", 0), target=("named", "plate", 3), approach=(-0.4, 1.0)),
    dict(name="t04_mug_plate_retake", text="Take the mug and put it on this plate", action="take, put on",
         labels=("reference", False, "reference", False, False),
         objects=[mug(0.60, 0.52), plate(0.30, 0.80)],
         object=("named", "mug", 0), target=("named", "plate", 1), approach=(0.5, 1.0)),
    dict(name="t05_mug_here", text="Take this mug and put it here", action="take, put",
         labels=("reference", False, "absolute_area", False, False),
         objects=[mug(0.25, 0.60)],
         object=("named", "mug", 0), target=("area", (4, 3))),
    dict(name="t06_thing_thing", text="Take this thing and put it on this thing", action="take, put on",
         labels=("deixis", True, "deixis", True, False),
         objects=[mug(0.25, 0.55), banana(0.45, 0.76), plate(0.70, 0.52, score=0.83), plate(0.72, 0.84, score=0.77)],
         object=("deictic", 0), target=("container", 3), approach=(0.2, 1.0)),
    dict(name="t07_mug_next_to_plate", text="Take the mug and put it next to the plate", action="take, put next to",
         labels=("reference", False, "relative_area", False, False),
         objects=[mug(0.30, 0.55), plate(0.65, 0.75)],
         object=("named", "mug", 0), target=("relative", "plate", 1, "next_to")),
    dict(name="t08_stack_plates", text="Take this plate and stack it on top of the other plate",
         action="take, stack on top",
         labels=("reference", True, "reference", True, False),
         objects=[plate(0.30, 0.66, score=0.82), plate(0.70, 0.64, score=0.85)],
         object=("named", "plate", 0), target=("named", "plate", 1)),
    dict(name="t09_banana_frying_pan", text="Take the banana and put it inside of the frying pan",
         action="take, put inside of",
         labels=("reference", True, "reference", False, True),
         objects=[banana(0.25, 0.55, score=0.68), banana(0.45, 0.86, score=0.81), pan(0.72, 0.62),
                  spoon(0.52, 0.48), cup(0.82, 0.86), box(0.20, 0.84, score=0.25)],
         object=("named", "banana", 0), target=("named", "frying pan", 2), approach=(-0.2, 1.0),
         false_positives={"banana": [5]}),
    dict(name="t10_fruit_this_thing", text="Take this fruit and put it inside of this thing",
         action="take, put inside of",
         labels=("deixis", True, "deixis", False, True),
         objects=[banana(0.25, 0.60, score=0.72), apple(0.45, 0.84, score=0.77), pan(0.72, 0.60),
                  spoon(0.55, 0.47), box(0.84, 0.86)],
         object=("named", "fruit", 0), target=("container", 2), approach=(-0.3, 1.0)),
    dict(name="t11_pour_cereal_bowl", text="Pour the cereal into the bowl", action="pour into",
         labels=("reference", True, "reference", False, True),
         objects=[cereal(0.25, 0.56, score=0.70), cereal(0.50, 0.56, score=0.84), bowl(0.72, 0.80),
                  spoon(0.80, 0.50), cup(0.28, 0.86)],
         object=("named", "cereal", 0), target=("named", "bowl", 2), approach=(0.0, 1.0)),
    dict(name="x01_cup_left_of_plate", text="Put the cup to the left of the plate", action="put to the left of",
         labels=("reference", False, "relative_area", False, True),
         objects=[cup(0.78, 0.52), plate(0.62, 0.80), spoon(0.22, 0.48)],
         object=("named", "cup", 0), target=("relative", "plate", 1, "left")),
    dict(name="x02_apple_right_of_bowl", text="Move the apple to the right of the bowl",
         action="move to the right of",
         labels=("reference", False, "relative_area", False, False),
         objects=[apple(0.25, 0.82), bowl(0.40, 0.55)],
         object=("named", "apple", 0), target=("relative", "bowl", 1, "right")),
    dict(name="x03_spoon_front_of_bowl", text="Place the spoon in front of the bowl", action="place in front of",
         labels=("reference", False, "relative_area", False, True),
         objects=[spoon(0.76, 0.50), bowl(0.45, 0.58), box(0.20, 0.86)],
         object=("named", "spoon", 0), target=("relative", "bowl", 1, "front")),
    dict(name="x04_banana_behind_mug", text="Put the banana behind the mug", action="put behind",
         labels=("reference", False, "relative_area", False, False),
         objects=[banana(0.30, 0.86), mug(0.60, 0.80)],
         object=("named", "banana", 0), target=("relative", "mug", 1, "behind")),
    dict(name="x05_thing_there", text="Take this thing and put it there", action="take, put",
         labels=("deixis", True, "absolute_area", False, True),
         objects=[apple(0.26, 0.56), spoon(0.50, 0.84), cup(0.78, 0.50)],
         object=("deictic", 0), target=("area", (3, 2))),
    dict(name="x06_mug_near_pointed_plate", text="Put the mug near the plate", action="put near",
         labels=("reference", False, "relative_area", True, False),
         objects=[mug(0.30, 0.50), plate(0.35, 0.82, score=0.88), plate(0.75, 0.62, score=0.80)],
         object=("named", "mug", 0), target=("relative", "plate", 2, "near")),
    dict(name="x07_two_hands", text="Take the mug and put it on the plate", action="take, put on",
         labels=("reference", False, "reference", False, False),
         objects=[mug(0.40, 0.60), plate(0.70, 0.75)],
         object=("named", "mug", 0), target=("named", "plate", 1), idle_hand=True),
    dict(name="x08_cup_into_bowl", text="Grab that cup and drop it into this bowl", action="grab, drop into",
         labels=("reference", True, "reference", True, True),
         objects=[cup(0.30, 0.55, score=0.66), cup(0.55, 0.86, score=0.83), bowl(0.76, 0.55, score=0.74),
                  bowl(0.30, 0.80, score=0.86), spoon(0.55, 0.47)],
         object=("named", "cup", 0), target=("named", "bowl", 2), approach=(0.2, 1.0)),
    dict(name="x09_no_hands", text="Take the banana and put it in the bowl", action="take, put in",
         labels=("reference", False, "reference", False, False),
         objects=[banana(0.30, 0.60), bowl(0.70, 0.72)],
         object=("named", "banana", 0), target=("named", "bowl", 1), no_hands=True, flags=["no_gesture"]),
]


# --- geometry helpers ---------------------------------------------------------

def unit(v):
    n = math.sqrt(sum(c * c for c in v))
    return tuple(c / n for c in v)


def ray_distance(origin, direction, p):
    d = unit(direction)
    rel = [p[i] - origin[i] for i in range(len(p))]
    t = max(0.0, sum(rel[i] * d[i] for i in range(len(p))))
    return math.sqrt(sum((rel[i] - t * d[i]) ** 2 for i in range(len(p))))


def grid_sites():
    xmin, ymin, xmax, ymax = TABLE
    cw, ch = (xmax - xmin) / GRID, (ymax - ymin) / GRID
    return {(c, r): (xmin + (c + 0.5) * cw, ymin + (r + 0.5) * ch) for r in range(GRID) for c in range(GRID)}


def grid_rect(col, row):
    xmin, ymin, xmax, ymax = TABLE
    cw, ch = (xmax - xmin) / GRID, (ymax - ymin) / GRID
    return (xmin + col * cw, ymin + row * ch, xmin + (col + 1) * cw, ymin + (row + 1) * ch)


def boxes_overlap(a, b):
    return min(a[2], b[2]) > max(a[0], b[0]) and min(a[3], b[3]) > max(a[1], b[1])


def rect_polygon(r):
    return [[r[0], r[1]], [r[2], r[1]], [r[2], r[3]], [r[0], r[3]]]


def pixel(p, w, h):
    return (min(int(math.floor(p[0] * w)), w - 1), min(int(math.floor(p[1] * h)), h - 1))


def rect_mask(bbox):
    bits = []
    for j in range(MASK_H):
        for i in range(MASK_W):
            x, y = (i + 0.5) / MASK_W, (j + 0.5) / MASK_H
            bits.append(1 if bbox[0] <= x <= bbox[2] and bbox[1] <= y <= bbox[3] else 0)
    runs, current, n = [], 0, 0
    for b in bits:
        if b == current:
            n += 1
        else:
            runs.append(n)
            current, n = b, 1
    runs.append(n)
    return {"width": MASK_W, "height": MASK_H, "rle": runs}


def quantize(p):
    return "%.4f,%.4f" % p


# --- hands --------------------------------------------------------------------

def hand(tip, base, z_tip=-0.06, handedness="right", score=0.95):
    d = unit((tip[0] - base[0], tip[1] - base[1]))
    perp = (-d[1], d[0])
    wrist = (base[0] - 0.09 * d[0], base[1] - 0.09 * d[1])
    pts = [None] * 21
    pts[0] = wrist
    for k, finger_base in enumerate((1, 5, 9, 13, 17)):
        off = (k - 1.5) * 0.018
        root = (base[0] + off * perp[0] - (0.0 if finger_base == 5 else 0.01) * d[0],
                base[1] + off * perp[1] - (0.0 if finger_base == 5 else 0.01) * d[1])
        if finger_base == 5:
            root = base
        for m in range(4):
            if finger_base == 5:
                f = m / 3.0
                pts[finger_base + m] = (base[0] + f * (tip[0] - base[0]), base[1] + f * (tip[1] - base[1]))
            else:
                curl = 0.008 * m
                pts[finger_base + m] = (root[0] + curl * d[0] + 0.004 * m * perp[0],
                                        root[1] + curl * d[1] + 0.004 * m * perp[1])
    lms = []
    for idx, (x, y) in enumerate(pts):
        z = z_tip + 0.04 * (1 - idx / 20.0) if idx != 8 else z_tip
        lms.append({"x": round(x, 6), "y": round(y, 6), "z": round(z, 6)})
    return {"handedness": handedness, "landmarks": lms, "score": score}


def pointing_hand(target, approach, reach=0.14, length=0.06):
    d = unit(approach)
    tip = (target[0] - reach * d[0], target[1] - reach * d[1])
    base = (tip[0] - length * d[0], tip[1] - length * d[1])
    for p in (tip, base):
        assert 0.0 <= p[0] <= 1.0 and 0.0 <= p[1] <= 1.0, "hand leaves the image"
    return hand(tip, base), (tip, base)


def idle_hand():
    return hand((0.06, 0.90), (0.04, 0.95), z_tip=0.05, handedness="left", score=0.9)


# --- scene assembly -----------------------------------------------------------

def words_with_timing(text):
    words, t = [], 0.30
    for w in text.split():
        dur = 0.22 + 0.035 * len(w)
        words.append({"text": w, "start": round(t, 3), "end": round(t + dur, 3)})
        t += dur + 0.08
    return words


def mention_end(words, phrase, last):
    """End time of the last word of `phrase` (first or last occurrence)."""
    toks = [w["text"].lower().strip(".,") for w in words]
    ph = phrase.split()
    hits = [i for i in range(len(toks) - len(ph) + 1) if toks[i:i + len(ph)] == ph]
    assert hits, "phrase %r not in transcript" % phrase
    i = hits[-1] if last else hits[0]
    return words[i + len(ph) - 1]["end"]


def frame_after(frames, t):
    for f in frames:
        if f["timestamp"] >= t:
            return f["frame_id"]
    return frames[-1]["frame_id"]


def detections_for(scene, phrase, frame_id):
    if phrase == "objects":
        members = list(range(len(scene["objects"])))
    elif phrase == "container":
        members = [i for i, o in enumerate(scene["objects"]) if o.container]
    else:
        members = [i for i, o in enumerate(scene["objects"]) if phrase in o.tags]
        members += scene.get("false_positives", {}).get(phrase, [])
    out = []
    for i in sorted(set(members)):
        o = scene["objects"][i]
        score = o.score if phrase in o.tags or phrase in ("objects", "container") else 0.22
        out.append({"bbox": o.bbox, "frame_id": frame_id, "label": phrase, "score": score})
    return out, sorted(set(members))


def check_pointing(scene, phrase, intended, tip, base):
    """The intended item must be strictly nearest to the forward ray."""
    direction = (tip[0] - base[0], tip[1] - base[1])
    _, members = detections_for(scene, phrase, "")
    dist = {}
    for i in members:
        o = scene["objects"][i]
        if phrase not in ("objects", "container") and phrase not in o.tags:
            continue
        if o.score < SCORE_FLOOR:
            continue
        dist[i] = ray_distance(tip, direction, o.center())
    best = dist[intended]
    for i, d in dist.items():
        if i != intended and d < best + RAY_MARGIN:
            raise SystemExit("%s: item %d (%.3f) competes with intended %d (%.3f) for %r"
                             % (scene["name"], i, d, intended, best, phrase))


def table_detection(frame_id):
    return [{"bbox": list(TABLE), "frame_id": frame_id, "label": "table", "score": 0.93}]


def depth_for_area(scene, site, approach):
    """Depth map and hand for pointing at `site` with a 3D ray."""
    def surface(x, y):
        return 0.35 + 0.45 * (1.0 - y)

    values = [[surface((i + 0.5) / DEPTH_W, (j + 0.5) / DEPTH_H) for i in range(DEPTH_W)] for j in range(DEPTH_H)]
    px_site = pixel(site, DEPTH_W, DEPTH_H)
    p3 = (site[0], site[1], values[px_site[1]][px_site[0]])
    d2 = unit(approach)
    u = unit((0.22 * d2[0], 0.22 * d2[1], 1.0))
    tip3 = tuple(p3[k] - 0.26 * u[k] for k in range(3))
    base3 = tuple(tip3[k] - 0.07 * u[k] for k in range(3))
    for p in (tip3, base3):
        assert 0.0 < p[0] < 1.0 and 0.0 < p[1] < 1.0 and 0.02 < p[2] < 0.98, "3D hand out of range"
    # Normalization stays the identity: pin the extremes on off-table pixels.
    values[DEPTH_H - 1][0] = 0.0
    values[0][0] = 1.0

    sites = dict(grid_sites())
    for k, o in enumerate(scene["objects"]):
        c = o.center()
        if TABLE[0] < c[0] < TABLE[2] and TABLE[1] < c[1] < TABLE[3]:
            sites[("obj", k)] = c
    reserved = {pixel(s, DEPTH_W, DEPTH_H) for s in sites.values()} | {(0, DEPTH_H - 1), (0, 0)}
    tip_px, base_px = pixel(tip3, DEPTH_W, DEPTH_H), pixel(base3, DEPTH_W, DEPTH_H)
    assert tip_px not in reserved and base_px not in reserved and tip_px != base_px, "hand pixel collides"
    values[tip_px[1]][tip_px[0]] = tip3[2]
    values[base_px[1]][base_px[0]] = base3[2]

    # Brute force over every site: the intended site must be the nearest in 3D.
    direction3 = tuple(tip3[k] - base3[k] for k in range(3))
    dist = {}
    for key, s in sites.items():
        px = pixel(s, DEPTH_W, DEPTH_H)
        dist[key] = ray_distance(tip3, direction3, (s[0], s[1], values[px[1]][px[0]]))
    intended = [k for k, s in sites.items() if s == site][0]
    for k, d in dist.items():
        if k != intended and d < dist[intended] + RAY_MARGIN:
            raise SystemExit("%s: site %s competes with the intended area" % (scene["name"], k))

    flat = [round(v, 6) for row in values for v in row]
    # rounding must not move the hand endpoints off their authored depths
    tip3 = (tip3[0], tip3[1], flat[tip_px[1] * DEPTH_W + tip_px[0]])
    base3 = (base3[0], base3[1], flat[base_px[1] * DEPTH_W + base_px[0]])
    return {"width": DEPTH_W, "height": DEPTH_H, "values": flat}, (tip3[:2], base3[:2])


def relative_gold(anchor, relation):
    """Band on the named side of the anchor, reaching one cell past its extent."""
    xmin, ymin, xmax, ymax = TABLE
    cw, ch = (xmax - xmin) / GRID, (ymax - ymin) / GRID
    b = anchor.bbox
    cx, cy = anchor.center()
    if relation in ("next_to", "near", "beside"):
        r = (b[0] - cw, b[1] - ch, b[2] + cw, b[3] + ch)
    elif relation == "left":
        r = (b[0] - 1.5 * cw, b[1] - ch, cx, b[3] + ch)
    elif relation == "right":
        r = (cx, b[1] - ch, b[2] + 1.5 * cw, b[3] + ch)
    elif relation == "front":
        r = (b[0] - cw, cy, b[2] + cw, b[3] + 1.5 * ch)
    elif relation == "behind":
        r = (b[0] - cw, b[1] - 1.5 * ch, b[2] + cw, cy)
    else:
        raise SystemExit("unknown relation " + relation)
    return tuple(round(v, 6) for v in (max(r[0], xmin), max(r[1], ymin), min(r[2], xmax), min(r[3], ymax)))


def check_area_free(scene, col, row):
    rect = grid_rect(col, row)
    for o in scene["objects"]:
        if boxes_overlap(rect, o.bbox):
            raise SystemExit("%s: target area (%d,%d) overlaps %s" % (scene["name"], col, row, o.cls))


def build(scene):
    words = words_with_timing(scene["text"])
    n_frames = int(math.ceil((words[-1]["end"] + 0.5) * FPS))
    frames = [{"frame_id": "f%04d" % i, "timestamp": round(i / FPS, 6)} for i in range(n_frames)]
    recordings = {}

    def record(cap, frame_id, prompt, payload):
        key = (cap, frame_id, prompt)
        if key in recordings:
            assert recordings[key] == payload, "conflicting recordings for %s" % (key,)
        recordings[key] = payload

    def record_masks(frame_id, dets):
        # Masks for every candidate, so replays without the gesture still resolve.
        for d in dets:
            b = d["bbox"]
            record("segment", frame_id, quantize(((b[0] + b[2]) / 2, (b[1] + b[3]) / 2)), rect_mask(b))

    kind = scene["object"][0]
    obj_phrase = scene["object"][1] if kind == "named" else None
    obj_index = scene["object"][-1]
    obj_end = mention_end(words, obj_phrase if obj_phrase else "thing", last=False)
    tgt = scene["target"]
    tgt_word = {"named": lambda: tgt[1], "relative": lambda: tgt[1], "container": lambda: "thing",
                "area": lambda: "here" if "here" in scene["text"].split() else "there"}[tgt[0]]()
    tgt_end = mention_end(words, tgt_word, last=True)
    obj_frame, tgt_frame = frame_after(frames, obj_end), frame_after(frames, tgt_end)
    assert obj_frame != tgt_frame
    approach = scene.get("approach", (-0.3, 1.0))
    no_hands = scene.get("no_hands", False)
    extra = [idle_hand()] if scene.get("idle_hand") else []

    # object frame
    obj = scene["objects"][obj_index]
    prompt_phrase = obj_phrase if obj_phrase else "objects"
    dets, _ = detections_for(scene, prompt_phrase, obj_frame)
    record("detect", obj_frame, prompt_phrase + ".", dets)
    record_masks(obj_frame, dets)
    if no_hands:
        record("hands", obj_frame, "", [])
    else:
        h, (tip, base) = pointing_hand(obj.center(), approach)
        check_pointing(scene, prompt_phrase, obj_index, tip, base)
        record("hands", obj_frame, "", [h] + extra)
    record("segment", obj_frame, quantize(obj.center()), rect_mask(obj.bbox))
    gold_object = {"name": obj_phrase if obj_phrase else "objects", "bbox": obj.bbox,
                   "mask": rect_mask(obj.bbox), "frame_id": obj_frame}

    # target frame
    if tgt[0] in ("container", "area"):
        dets, _ = detections_for(scene, "container", tgt_frame)
        record("detect", tgt_frame, "container.", dets)
        record_masks(tgt_frame, dets)
    if tgt[0] in ("named", "container", "relative"):
        phrase = "container" if tgt[0] == "container" else tgt[1]
        index = tgt[1] if tgt[0] == "container" else tgt[2]
        item = scene["objects"][index]
        if tgt[0] != "container":
            dets, _ = detections_for(scene, phrase, tgt_frame)
            record("detect", tgt_frame, phrase + ".", dets)
            if tgt[0] == "named":
                record_masks(tgt_frame, dets)
        if no_hands:
            record("hands", tgt_frame, "", [])
        else:
            h, (tip, base) = pointing_hand(item.center(), approach)
            check_pointing(scene, phrase, index, tip, base)
            record("hands", tgt_frame, "", [h] + extra)
        if tgt[0] == "relative":
            record("detect", tgt_frame, "table.", table_detection(tgt_frame))
            record("detect", tgt_frame, "objects.", detections_for(scene, "objects", tgt_frame)[0])
            region = relative_gold(item, tgt[3])
            gold_target = {"kind": "empty_cell", "cell_polygon": rect_polygon(region),
                           "cell_center": [round((region[0] + region[2]) / 2, 6), round((region[1] + region[3]) / 2, 6)],
                           "frame_id": tgt_frame}
        else:
            record("segment", tgt_frame, quantize(item.center()), rect_mask(item.bbox))
            gold_target = {"kind": "object", "name": tgt[1] if tgt[0] == "named" else "container",
                           "bbox": item.bbox, "mask": rect_mask(item.bbox), "frame_id": tgt_frame}
    else:
        col, row = tgt[1]
        check_area_free(scene, col, row)
        site = grid_sites()[(col, row)]
        depth, (tip, base) = depth_for_area(scene, site, approach)
        record("detect", tgt_frame, "table.", table_detection(tgt_frame))
        record("detect", tgt_frame, "objects.", detections_for(scene, "objects", tgt_frame)[0])
        record("depth", tgt_frame, "", depth)
        record("hands", tgt_frame, "", [hand(tip, base)] + extra)
        region = tuple(round(v, 6) for v in grid_rect(col, row))
        gold_target = {"kind": "empty_cell", "cell_polygon": rect_polygon(region),
                       "cell_center": [round(site[0], 6), round(site[1], 6)], "frame_id": tgt_frame}

    bundle = {
        "schema": "uncom/1",
        "frames": frames,
        "transcript": {"language": "en", "words": words},
        "z_sign": "closer_is_smaller",
        "recordings": [{"capability": c, "frame_id": f, "prompt": p, "payload": v}
                       for (c, f, p), v in sorted(recordings.items())],
    }
    lab = scene["labels"]
    gold = {
        "schema": "uncom/1",
        "command": {"schema": "uncom/1", "object": gold_object, "action": scene["action"], "target": gold_target,
                    "flags": scene.get("flags", [])},
        "labels": {"object": lab[0], "object_distractors": lab[1], "target": lab[2],
                   "target_distractors": lab[3], "clutter": lab[4]},
    }
    return bundle, gold


def main(argv):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parents[2] / "data" / "suite"))
    args = ap.parse_args(argv)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for scene in SCENES:
        bundle, gold = build(scene)
        (out / (scene["name"] + ".bundle.json")).write_text(json.dumps(bundle, sort_keys=True) + "\n")
        (out / (scene["name"] + ".gold.json")).write_text(json.dumps(gold, sort_keys=True, indent=1) + "\n")
    print("wrote %d scenes to %s" % (len(SCENES), out))


if __name__ == "__main__":
    main(sys.argv[1:])
