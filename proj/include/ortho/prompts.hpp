#pragma once

#include <string_view>

#include "ortho/qa.hpp"

namespace ortho::prompts {

// Shared few-shot instruction for three-view spatial reasoning.
inline constexpr std::string_view kThreeViewInstruction =
    R"(Instruction: Three-View Spatial Reasoning

You are an expert visual-spatial reasoning model. You must strictly follow these steps to analyze the input image and answer the question:
1. Front View Analysis: Describe the shapes and arrangement visible when looking at the object(s) directly from the front.
2. Left View Analysis: Describe the shapes and arrangement visible when looking at the object(s) directly from the left side.
3. Top View Analysis (Plan View): Describe the shapes and arrangement visible when looking down at the object(s) from above.
4. Synthesized Reasoning: Combine the analyses from the three views to accurately locate, identify, and count the objects.
5. Final Answer: The final response must be placed inside the \boxed{} format.)";

// Teaching demonstration for block counting.
inline constexpr std::string_view kBlockCountingDemo =
    R"(Teaching Demonstration

Question: How many blocks are there in the picture? Return your final response within \boxed{}.

Reasoning:
Step 1: Front View Analysis
I see three columns of blocks from the front. The leftmost column has no visible blocks. The middle column has two blocks stacked vertically. The rightmost column has one block at the bottom level.

Step 2: Left View Analysis
Looking from the left side, I see three columns as well. The column nearest to me has two stacked blocks. The middle column has one block. The farthest column has one block.

Step 3: Top View Analysis
From above, the layout is clear. I see blocks arranged in a grid of three columns (left, middle, right) and three rows (front, middle, back). The top view shows: in the middle column, there are three blocks in a vertical line from front to back; in the right column, there are two blocks - one in the middle row and one in the back row; the left column appears empty from the top.

Step 4: Synthesized Reasoning
Combining the views, I can reconstruct the 3D arrangement. The front view's middle column (two blocks) corresponds to the top view's middle column having three blocks front-to-back, meaning one of them is hidden behind the front stack from the front perspective. The front view's right column (one block) matches the top view showing two blocks in that column, meaning the back one is hidden. The left view helps confirm the left column has blocks only in the back rows, not visible from the front. Counting all unique block positions from the combined grid, there are blocks at these coordinates: (middle column, front row, bottom), (middle column, middle row, bottom), (middle column, back row, bottom), (right column, middle row, bottom), (right column, back row, bottom), and (left column, back row, bottom) - six blocks in total.

Step 5: Final Answer
\boxed{6})";

// Teaching demonstration for object counting.
inline constexpr std::string_view kObjectCountingDemo =
    R"(Teaching Demonstration

Question: How many cylinder are there in this image? Return your final response within \boxed{}.

Reasoning:
Step 1: Front View Analysis
I am scanning the arrangement of 3D geometric shapes from the front perspective to establish their lateral order. Looking from left to right, I distinctly identify a sequence of objects: first a large cube, then a cone, followed by a square pyramid. Continuing the scan to the right, I see a small sphere, a larger sphere, a small cube, and a rectangular cuboid. Finally, positioned at the very far right of this lineup, I observe a single cylinder.

Step 2: Left View Analysis
Shifting my perspective to the left side to assess the depth and relative positioning, I track the objects again. In this projection, I can distinguish the large cube, the cuboid, and the small sphere. I also clearly see the cylinder positioned within the depth of the field, located near the square pyramid and the cone. This view confirms the existence of the cylindrical shape observed in the front view.

Step 3: Top View Analysis
Observing the scene from a top-down "bird's-eye" view allows me to verify the total inventory of all items without occlusion. From this vantage point, I can categorize every shape present. I observe a total set consisting of two spheres, two cubes, one cone, one cuboid, and one square pyramid. Crucially, in this complete collection, I identify exactly one object with the circular cross-section and vertical sides characteristic of a cylinder.

Step 4: Synthesized Reasoning
By cross-referencing all three views, I can establish a definitive count. The front view highlighted one cylinder at the end of the row. The side view corroborated its position in space. The top view provided a comprehensive inventory, explicitly isolating the distinct shapes and confirming that only one of them is a cylinder. There are no duplicates or hidden cylinders.

Step 5: Final Answer
\boxed{1})";

// Teaching demonstration for object position reasoning.
inline constexpr std::string_view kObjectPositionDemo =
    R"(Teaching Demonstration

Question: In which direction is the square pyramid relative to the smaller sphere? Answer the question from the choices: ["front", "back", "right", "left", "front left", "front right", "back left", "back right"] Return your final response within \boxed{}.

Reasoning:
Step 1: Front View Analysis
I start by examining the front view to determine the horizontal (left-right) alignment of the objects. Looking across the scene from left to right, I see a sequence of objects: a bigger cube, a cone, a square pyramid, followed by a smaller sphere, and then others. This observation clearly establishes that the square pyramid is positioned to the left of the smaller sphere.

Step 2: Left View Analysis
Next, I look at the left side view to understand the depth (back-front) relationship. In this perspective, the arrangement from left to right represents the order from the back of the scene to the front. I observe the smaller sphere appearing earlier in the sequence (further to the "left" or back), followed by the square pyramid which appears later (further to the "right" or front). This indicates that the square pyramid is located in front of the smaller sphere.

Step 3: Top View Analysis
Finally, I examine the top view to confirm these spatial coordinates. From this overhead perspective, I can verify both axes simultaneously. On the left-right axis, the square pyramid is clearly to the left of the smaller sphere. On the top-down axis (representing back-to-front), the smaller sphere is positioned closer to the "top" (back) edge, while the square pyramid is closer to the "bottom" (front) edge.

Step 4: Synthesized Reasoning
By synthesizing the observations from all three views, I can pinpoint the relative location:
1. Left-Right: The square pyramid is to the left of the smaller sphere.
2. Front-Back: The square pyramid is in front of the smaller sphere.
Combining these two directional components, the square pyramid is located to the front left of the smaller sphere.

Step 5: Final Answer
\boxed{front left})";

// Template for converting a three-view description into a natural-language
// reasoning trace. Shipped as a static asset; no trace generation happens
// in this toolkit.
inline constexpr std::string_view kThreeViewToReasoningPrompt =
    R"(System Prompt
You are a spatial reasoner who mentally reconstructs a 3D scene from partial viewpoints. You do not describe data; you form an internal 3D mental image and reason within it.

## Role
You are a spatial reasoner who directly perceives a 3D scene. You do not read data or analyze formats; you mentally see a solid block structure.

## Task
Given a Problem and Three views (front, left, top), write a single continuous reasoning narrative that reconstructs the scene, solves the problem, and ends with the final answer in \boxed{}.

## How to read the views
The views may appear in two forms.
1) Block list format
Each view lists blocks like `{x,y,z,color,visible}`. Interpret fields as spatial cues:
- `x`: larger values correspond to positions further to the left
- `y`: larger values correspond to positions further to the front
- `z`: larger values correspond to positions higher up
- `color`: indicates block color (optional)
- `visible=false`: the block exists but is not seen from this view
Blocks will not float, and do not mention coordinate values or field names. Convert everything into spatial phrases (leftmost, back row, top layer, stacked above, hidden behind and so on).

2) Ordered list format
Views provide sequences like `from-left-to-right` or `from-back-to-front`. Treat them as your scan order in that view and describe the relative layout accordingly.

## Reasoning constraints
- First examine the front view to infer left-right and vertical relations.
- Then examine the left view to resolve front-back structure and occlusion.
- Next examine the top view to determine the overall layout and coverage.
- Finally integrate all observations into a single coherent 3D mental model.
- When counting blocks, determine the quantity based on vertical stacking and use explicit numerical reasoning rather than purely verbal description.

## Output rules
- Output only the reasoning as plain paragraphs (no headings, no lists).
- First-person present tense ("I see... I turn... I check...").
- Forbidden phrases: "JSON", "data", "input", "provided", "coordinates", or any literal field names like x, y, z.
- This answer should be derived through reasoning, do not reveal that an answer was provided.

## Input
Problem: {PROBLEM}
(Internal check only) Answer: {ANSWER}
Three views: {THREE_VIEW_JSON})";

// Task-matched teaching demonstration for the few-shot mode.
inline std::string_view demonstration_for(Task task) {
    switch (task) {
        case Task::BlockCount:
        case Task::BlockCountAttr:
            return kBlockCountingDemo;
        case Task::ObjectCount:
        case Task::ObjectCountAttr:
            return kObjectCountingDemo;
        case Task::ObjectPosition:
        case Task::ObjectPositionAttr:
            return kObjectPositionDemo;
    }
    return kBlockCountingDemo;
}

}  // namespace ortho::prompts
